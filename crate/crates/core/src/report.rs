//! A plain-text report: `key: value` lines followed by tab-separated tables.
//!
//! ```text
//! # cagroup report
//! command: decide --rule rule102 --property postsurjective
//! group: Z^1
//! status: no
//! certificate.kind: periodic-pair
//! certificate.first: 01
//! certificate.second: 10
//!
//! [table preimage-counts]
//! pattern	count	expected
//! {(0)=0}	2	2
//! [end]
//! ```
//!
//! Verdicts and certificates serialize under a key prefix and parse back
//! losslessly, so a report can be fed back for re-verification.

use std::fmt::Write as _;

use crate::ca::{LocalRule, Pattern, RuleFile};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::verdict::{parse_word, word_string, Certificate, LevelCount, PreimageCount, Status, Verdict};

const HEADER: &str = "# cagroup report";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line plus one line per row, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub entries: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        let value = value.to_string().replace('\n', "; ");
        self.entries.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Parse(format!("report lacks {key:?}")))
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for (k, v) in &self.entries {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for t in &self.tables {
            writeln!(out, "\n[table {}]", t.name).unwrap();
            out.push_str(&t.to_tsv());
            out.push_str("[end]\n");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(Error::Parse("missing report header".into()));
        }
        let mut report = Report::new();
        let mut current: Option<Table> = None;
        for line in lines {
            if let Some(table) = current.as_mut() {
                if line == "[end]" {
                    report.tables.push(current.take().unwrap());
                } else if table.columns.is_empty() {
                    table.columns = line.split('\t').map(String::from).collect();
                } else {
                    table.rows.push(line.split('\t').map(String::from).collect());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix("[table ").and_then(|l| l.strip_suffix(']')) {
                current = Some(Table {
                    name: name.to_string(),
                    ..Table::default()
                });
                continue;
            }
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| Error::Parse(format!("bad report line {line:?}")))?;
            report.entries.push((k.to_string(), v.to_string()));
        }
        if current.is_some() {
            return Err(Error::Parse("unterminated table".into()));
        }
        Ok(report)
    }

    /// Writes `status`, `bound`, `basis` and the certificate under `prefix`.
    pub fn push_verdict(&mut self, prefix: &str, verdict: &Verdict) {
        self.push(format!("{prefix}status"), verdict.status);
        if let Some(b) = verdict.bound {
            self.push(format!("{prefix}bound"), b);
        }
        self.push(format!("{prefix}basis"), &verdict.basis);
        if let Some(c) = &verdict.certificate {
            for (k, v) in certificate_fields(c) {
                self.push(format!("{prefix}certificate.{k}"), v);
            }
        }
    }

    /// Reads back a verdict written by [`Report::push_verdict`].
    pub fn verdict(&self, prefix: &str, group: Group) -> Result<Verdict> {
        let key = |k: &str| format!("{prefix}{k}");
        let status_text = self.require(&key("status"))?;
        let status = Status::parse(status_text)
            .ok_or_else(|| Error::Parse(format!("bad status {status_text:?}")))?;
        let bound = self
            .get(&key("bound"))
            .map(|b| b.parse().map_err(|_| Error::Parse(format!("bad bound {b:?}"))))
            .transpose()?;
        let cert_prefix = key("certificate.");
        let fields: Vec<(String, String)> = self
            .entries
            .iter()
            .filter_map(|(k, v)| k.strip_prefix(&cert_prefix).map(|f| (f.to_string(), v.clone())))
            .collect();
        let certificate = if fields.is_empty() {
            None
        } else {
            Some(parse_certificate(&fields, group)?)
        };
        Ok(Verdict {
            status,
            certificate,
            bound,
            basis: self.get(&key("basis")).unwrap_or_default().to_string(),
        })
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn count_fields(prefix: &str, c: &PreimageCount, out: &mut Vec<(String, String)>) {
    out.push((format!("{prefix}.pattern"), c.pattern.to_string()));
    out.push((format!("{prefix}.window"), c.window_size.to_string()));
    out.push((format!("{prefix}.count"), c.count.to_string()));
    out.push((format!("{prefix}.expected"), c.expected.to_string()));
}

/// `(field, value)` pairs describing a certificate, starting with `kind`.
pub fn certificate_fields(c: &Certificate) -> Vec<(String, String)> {
    let mut out = vec![("kind".to_string(), c.kind().to_string())];
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    match c {
        Certificate::Orphan { word } => put("word", word_string(word)),
        Certificate::ErasableWords {
            left,
            middle,
            alternate,
            right,
        } => {
            put("left", word_string(left));
            put("middle", word_string(middle));
            put("alternate", word_string(alternate));
            put("right", word_string(right));
        }
        Certificate::PeriodicPair { first, second } => {
            put("first", word_string(first));
            put("second", word_string(second));
        }
        Certificate::SubsetClosure { subsets } => {
            put("subsets", join(subsets.iter().map(|s| join(s, ",")), ";"))
        }
        Certificate::PairClosure { pairs } => {
            put("pairs", join(pairs.iter().map(|(a, b)| format!("{a}:{b}")), ","))
        }
        Certificate::Inverse { rule } => put("rule", RuleFile::from_rule(rule).to_text().trim_end().replace('\n', "; ")),
        Certificate::Deviation { first, second } => {
            count_fields("first", first, &mut out);
            if let Some(second) = second {
                count_fields("second", second, &mut out);
            }
        }
        Certificate::Balanced { levels } => put(
            "levels",
            join(
                levels
                    .iter()
                    .map(|l| format!("{}:{}:{}:{}", l.n, l.pattern_cells, l.window_cells, l.expected)),
                ",",
            ),
        ),
        Certificate::ErasablePatterns { m, first, second } => {
            put("m", m.to_string());
            put("first", first.to_string());
            put("second", second.to_string());
        }
        Certificate::Correction { radius, instances } => {
            put("radius", radius.to_string());
            put("instances", instances.to_string());
        }
        Certificate::Uncorrectable { e, state, radius } => {
            put("e", e.to_string());
            put("state", state.to_string());
            put("radius", radius.to_string());
        }
        Certificate::BallMismatch { vertex } => put("vertex", vertex.to_string()),
        Certificate::Approximation { passing, vertices } => {
            put("passing", passing.to_string());
            put("vertices", vertices.to_string());
        }
    }
    out
}

fn parse_num<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {text:?}")))
}

fn parse_list<T>(text: &str, sep: char, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(sep).map(item).collect()
}

/// Inverse of [`certificate_fields`].
pub fn parse_certificate(fields: &[(String, String)], group: Group) -> Result<Certificate> {
    let get = |k: &str| {
        fields
            .iter()
            .find(|(f, _)| f == k)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("certificate lacks {k:?}")))
    };
    let word = |k: &str| -> Result<Vec<u8>> {
        let text = get(k)?;
        parse_word(text).ok_or_else(|| Error::Parse(format!("bad word {text:?}")))
    };
    let pattern = |k: &str| Pattern::parse(&group, get(k)?);
    let count = |prefix: &str| -> Result<PreimageCount> {
        Ok(PreimageCount {
            pattern: pattern(&format!("{prefix}.pattern"))?,
            window_size: parse_num(get(&format!("{prefix}.window"))?)?,
            count: parse_num(get(&format!("{prefix}.count"))?)?,
            expected: parse_num(get(&format!("{prefix}.expected"))?)?,
        })
    };
    Ok(match get("kind")? {
        "orphan" => Certificate::Orphan { word: word("word")? },
        "erasable-words" => Certificate::ErasableWords {
            left: word("left")?,
            middle: word("middle")?,
            alternate: word("alternate")?,
            right: word("right")?,
        },
        "periodic-pair" => Certificate::PeriodicPair {
            first: word("first")?,
            second: word("second")?,
        },
        "subset-closure" => Certificate::SubsetClosure {
            subsets: parse_list(get("subsets")?, ';', |s| parse_list(s, ',', parse_num))?,
        },
        "pair-closure" => Certificate::PairClosure {
            pairs: parse_list(get("pairs")?, ',', |p| {
                let (a, b) = p
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad pair {p:?}")))?;
                Ok((parse_num(a)?, parse_num(b)?))
            })?,
        },
        "inverse" => Certificate::Inverse {
            rule: RuleFile::parse(&get("rule")?.replace("; ", "\n"))?.to_rule()?,
        },
        "deviation" => Certificate::Deviation {
            first: count("first")?,
            second: if get("second.count").is_ok() {
                Some(count("second")?)
            } else {
                None
            },
        },
        "balanced" => Certificate::Balanced {
            levels: parse_list(get("levels")?, ',', |l| {
                let parts: Vec<&str> = l.split(':').collect();
                let [n, p, w, e] = parts[..] else {
                    return Err(Error::Parse(format!("bad level {l:?}")));
                };
                Ok(LevelCount {
                    n: parse_num(n)?,
                    pattern_cells: parse_num(p)?,
                    window_cells: parse_num(w)?,
                    expected: parse_num(e)?,
                })
            })?,
        },
        "erasable-patterns" => Certificate::ErasablePatterns {
            m: parse_num(get("m")?)?,
            first: pattern("first")?,
            second: pattern("second")?,
        },
        "correction" => Certificate::Correction {
            radius: parse_num(get("radius")?)?,
            instances: parse_num(get("instances")?)?,
        },
        "uncorrectable" => Certificate::Uncorrectable {
            e: pattern("e")?,
            state: parse_num(get("state")?)?,
            radius: parse_num(get("radius")?)?,
        },
        "ball-mismatch" => Certificate::BallMismatch {
            vertex: parse_num(get("vertex")?)?,
        },
        "approximation" => Certificate::Approximation {
            passing: parse_num(get("passing")?)?,
            vertices: parse_num(get("vertices")?)?,
        },
        other => return Err(Error::Parse(format!("unknown certificate kind {other:?}"))),
    })
}

/// The rule of an inverse certificate, if any.
pub fn inverse_of(v: &Verdict) -> Option<&LocalRule> {
    match &v.certificate {
        Some(Certificate::Inverse { rule }) => Some(rule),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::symbolic::{decide_balanced_1d, decide_preinjective, decide_reversible, decide_surjective};

    fn round_trip(v: &Verdict, group: Group) {
        let mut r = Report::new();
        r.push("command", "test");
        r.push("group", group);
        r.push_verdict("", v);
        let back = Report::parse(&r.to_text()).unwrap();
        assert_eq!(back, r);
        assert_eq!(&back.verdict("", group).unwrap(), v);
    }

    #[test]
    fn verdicts_round_trip() {
        let l = Limits::default();
        let z = Group::integers();
        for code in [0u8, 15, 30, 102, 170, 232] {
            let rule = LocalRule::elementary(code);
            round_trip(&decide_surjective(&rule, &l).unwrap(), z);
            round_trip(&decide_preinjective(&rule, &l).unwrap(), z);
            round_trip(&decide_reversible(&rule, &l).unwrap(), z);
            round_trip(&decide_balanced_1d(&rule, 2, &l).unwrap(), z);
        }
    }

    #[test]
    fn tables_round_trip() {
        let mut r = Report::new();
        r.push("command", "demo");
        let mut t = Table::new("counts", &["n", "count"]);
        t.push(vec!["1".into(), "2".into()]);
        t.push(vec!["2".into(), "3".into()]);
        r.tables.push(t);
        let text = r.to_text();
        assert!(text.contains("[table counts]\nn\tcount\n1\t2\n2\t3\n[end]\n"));
        assert_eq!(Report::parse(&text).unwrap(), r);
        assert!(Report::parse("no header").is_err());
    }
}
