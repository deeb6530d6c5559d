//! Plain-text rule files.
//!
//! ```text
//! states 2
//! group Z^1
//! neighborhood (-1) (0) (1)
//! table 0 1 1 0 0 1 1 0
//! ```
//!
//! `wolfram <code>` may replace the `table` line for binary rules. Blank
//! lines and lines starting with `#` are ignored on input. [`RuleFile::to_text`]
//! of a parsed canonical file reproduces it byte for byte.

use std::fmt::Write as _;

use crate::ca::rule::{Alphabet, LocalRule, Neighborhood};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableSpec {
    Explicit(Vec<u8>),
    Wolfram(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFile {
    pub states: u8,
    pub group: Group,
    pub neighborhood: Vec<GroupElement>,
    pub table: TableSpec,
}

impl RuleFile {
    pub fn from_rule(rule: &LocalRule) -> RuleFile {
        RuleFile {
            states: rule.states(),
            group: rule.group(),
            neighborhood: rule.neighborhood().elements().to_vec(),
            table: TableSpec::Explicit(rule.table().to_vec()),
        }
    }

    pub fn to_rule(&self) -> Result<LocalRule> {
        let n = Neighborhood::new(self.group, self.neighborhood.clone())?;
        match &self.table {
            TableSpec::Explicit(t) => LocalRule::new(Alphabet::new(self.states)?, n, t.clone()),
            TableSpec::Wolfram(code) => {
                if self.states != 2 {
                    return Err(Error::InvalidInput("wolfram codes need 2 states".into()));
                }
                LocalRule::from_wolfram(n, *code)
            }
        }
    }

    pub fn parse(text: &str) -> Result<RuleFile> {
        let mut states = None;
        let mut group = None;
        let mut neighborhood = None;
        let mut table = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let err = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            match key {
                "states" => states = Some(rest.parse::<u8>().map_err(|_| err("bad state count"))?),
                "group" => group = Some(Group::parse(rest)?),
                "neighborhood" => neighborhood = Some(rest.to_string()),
                "table" => {
                    let t = rest
                        .split_whitespace()
                        .map(|x| x.parse::<u8>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| err("bad table entry"))?;
                    table = Some(TableSpec::Explicit(t));
                }
                "wolfram" => {
                    table = Some(TableSpec::Wolfram(
                        rest.parse().map_err(|_| err("bad wolfram code"))?,
                    ))
                }
                other => return Err(err(&format!("unknown key {other:?}"))),
            }
        }
        let group = group.ok_or_else(|| Error::Parse("missing group".into()))?;
        let neighborhood = neighborhood
            .ok_or_else(|| Error::Parse("missing neighborhood".into()))?
            .split_whitespace()
            .map(|lit| group.parse_element(lit))
            .collect::<Result<Vec<_>>>()?;
        Ok(RuleFile {
            states: states.ok_or_else(|| Error::Parse("missing states".into()))?,
            group,
            neighborhood,
            table: table.ok_or_else(|| Error::Parse("missing table or wolfram".into()))?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "states {}", self.states).unwrap();
        writeln!(out, "group {}", self.group).unwrap();
        let n: Vec<String> = self.neighborhood.iter().map(|g| g.to_string()).collect();
        writeln!(out, "neighborhood {}", n.join(" ")).unwrap();
        match &self.table {
            TableSpec::Explicit(t) => {
                let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                writeln!(out, "table {}", t.join(" ")).unwrap();
            }
            TableSpec::Wolfram(code) => writeln!(out, "wolfram {code}").unwrap(),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trips() {
        let text = "states 2\ngroup Z^1\nneighborhood (-1) (0) (1)\nwolfram 102\n";
        let file = RuleFile::parse(text).unwrap();
        assert_eq!(file.to_text(), text);
        assert_eq!(file.to_rule().unwrap(), LocalRule::elementary(102));

        let explicit = RuleFile::from_rule(&LocalRule::elementary(102)).to_text();
        assert_eq!(
            explicit,
            "states 2\ngroup Z^1\nneighborhood (-1) (0) (1)\ntable 0 1 1 0 0 1 1 0\n"
        );
        assert_eq!(RuleFile::parse(&explicit).unwrap().to_text(), explicit);
    }

    #[test]
    fn free_group_rule() {
        let text = "# majority\nstates 2\ngroup F_2\nneighborhood 1 a A b B\nwolfram 4276676736\n";
        let rule = RuleFile::parse(text).unwrap().to_rule().unwrap();
        assert_eq!(rule.eval(&[1, 1, 1, 0, 0]), 1);
        assert_eq!(rule.eval(&[1, 1, 0, 0, 0]), 0);
    }

    #[test]
    fn malformed_files() {
        assert!(RuleFile::parse("states 2\ngroup Z\nneighborhood (0)\n").is_err());
        assert!(RuleFile::parse("states x\ngroup Z\nneighborhood (0)\ntable 0 1\n").is_err());
        assert!(RuleFile::parse("states 2\ngroup Z\nneighborhood (0)\ncolor red\n").is_err());
        let bad_table = RuleFile::parse("states 2\ngroup Z\nneighborhood (0)\ntable 0 1 1\n").unwrap();
        assert!(bad_table.to_rule().is_err());
    }
}
