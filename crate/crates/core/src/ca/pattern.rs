use std::collections::BTreeMap;
use std::fmt;

use crate::ca::rule::LocalRule;
use crate::error::{Error, Result};
use crate::group::{mul_unchecked, Group, GroupElement};

/// A finite-support partial configuration, ordered length-lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Pattern {
    values: BTreeMap<GroupElement, u8>,
}

impl Pattern {
    pub fn new() -> Pattern {
        Pattern::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (GroupElement, u8)>) -> Pattern {
        Pattern {
            values: pairs.into_iter().collect(),
        }
    }

    /// Pattern on `support` with values taken in order from `values`.
    pub fn on(support: &[GroupElement], values: &[u8]) -> Pattern {
        assert_eq!(support.len(), values.len());
        Pattern::from_pairs(support.iter().cloned().zip(values.iter().copied()))
    }

    pub fn uniform(support: &[GroupElement], state: u8) -> Pattern {
        Pattern::from_pairs(support.iter().map(|g| (g.clone(), state)))
    }

    pub fn get(&self, g: &GroupElement) -> Option<u8> {
        self.values.get(g).copied()
    }

    pub fn set(&mut self, g: GroupElement, state: u8) {
        self.values.insert(g, state);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u8)> {
        self.values.iter().map(|(g, &v)| (g, v))
    }

    /// Values in support order.
    pub fn values(&self) -> Vec<u8> {
        self.values.values().copied().collect()
    }

    pub fn restrict(&self, support: &[GroupElement]) -> Result<Pattern> {
        support
            .iter()
            .map(|g| {
                self.get(g)
                    .map(|v| (g.clone(), v))
                    .ok_or_else(|| Error::SupportViolation(g.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Pattern::from_pairs)
    }

    /// Parses `{g=v,h=w}` with element literals of `group`.
    pub fn parse(group: &Group, text: &str) -> Result<Pattern> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("pattern literal must be braced: {text:?}")))?;
        let mut values = BTreeMap::new();
        if inner.trim().is_empty() {
            return Ok(Pattern { values });
        }
        // element literals may contain commas inside parentheses
        let mut depth = 0;
        let mut start = 0;
        let mut items = Vec::new();
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    items.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        items.push(&inner[start..]);
        for item in items {
            let (lhs, rhs) = item
                .rsplit_once('=')
                .ok_or_else(|| Error::Parse(format!("bad pattern entry {item:?}")))?;
            let g = group.parse_element(lhs)?;
            let v = rhs
                .trim()
                .parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad state in {item:?}")))?;
            if values.insert(g, v).is_some() {
                return Err(Error::Parse(format!("repeated element in {text:?}")));
            }
        }
        Ok(Pattern { values })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (g, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}={v}")?;
        }
        write!(f, "}}")
    }
}

/// Applies the local rule at each target: `q(g) = f(p(g n_1), .., p(g n_m))`.
pub fn apply_pattern(rule: &LocalRule, p: &Pattern, targets: &[GroupElement]) -> Result<Pattern> {
    let group = rule.group();
    let mut tuple = vec![0u8; rule.neighborhood().len()];
    let mut out = Pattern::new();
    for g in targets {
        group.check(g)?;
        for (slot, n) in tuple.iter_mut().zip(rule.neighborhood().elements()) {
            let gn = mul_unchecked(g, n);
            *slot = p
                .get(&gn)
                .ok_or_else(|| Error::SupportViolation(format!("{gn} (needed by target {g})")))?;
        }
        out.set(g.clone(), rule.eval(&tuple));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::rule::{Alphabet, Neighborhood};

    #[test]
    fn xor_on_three_cells() {
        let z = Group::integers();
        let rule =
            LocalRule::from_fn(Alphabet::binary(), Neighborhood::interval(0, 1), |x| x[0] ^ x[1]).unwrap();
        let p = Pattern::on(&[z.int(0), z.int(1), z.int(2)], &[1, 1, 0]);
        let q = apply_pattern(&rule, &p, &[z.int(0), z.int(1)]).unwrap();
        assert_eq!(q.values(), vec![0, 1]);
        assert!(matches!(
            apply_pattern(&rule, &p, &[z.int(2)]),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn identity_restricts() {
        let z = Group::integers();
        let id = LocalRule::identity(z, Alphabet::binary());
        let support = [z.int(-1), z.int(0), z.int(1)];
        let p = Pattern::on(&support, &[1, 0, 1]);
        let q = apply_pattern(&id, &p, &support[..2]).unwrap();
        assert_eq!(q, p.restrict(&support[..2]).unwrap());
        let zero = LocalRule::elementary(0);
        let q = apply_pattern(&zero, &p, &[z.int(0)]).unwrap();
        assert_eq!(q.values(), vec![0]);
    }

    #[test]
    fn literal_round_trip() {
        let z2 = Group::FreeAbelian(2);
        let p = Pattern::parse(&z2, "{(0,0)=1,(1,0)=0,(-1,2)=1}").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(Pattern::parse(&z2, &p.to_string()).unwrap(), p);
        let f2 = Group::Free(2);
        let p = Pattern::parse(&f2, "{1=0,a=1,B=1}").unwrap();
        assert_eq!(p.to_string(), "{1=0,a=1,B=1}");
        assert!(Pattern::parse(&f2, "{1=0,1=1}").is_err());
        assert!(Pattern::parse(&f2, "1=0").is_err());
    }
}
