//! Moving a rule between a group and the subgroup spanned by its neighborhood.
//!
//! Supported shapes: coordinate sublattices of `Z^d`, and subgroups of `F_k`
//! generated by a subset of the standard generators (a single generator
//! gives `Z`).

use crate::ca::rule::LocalRule;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    /// `Z^{d'} -> Z^d`, coordinate `i` goes to axis `axes[i]`.
    Axes { axes: Vec<usize>, rank: usize },
    /// `F_j -> F_k`, generator `i` goes to generator `generators[i]` (1-based).
    Generators { generators: Vec<usize>, rank: usize },
    /// `Z -> F_k`, `n` goes to `a_generator^n`.
    Cyclic { generator: usize, rank: usize },
}

impl Embedding {
    pub fn supergroup(&self) -> Group {
        match *self {
            Embedding::Axes { rank, .. } => Group::FreeAbelian(rank),
            Embedding::Generators { rank, .. } | Embedding::Cyclic { rank, .. } => Group::Free(rank),
        }
    }

    pub fn domain(&self) -> Group {
        match self {
            Embedding::Axes { axes, .. } => Group::FreeAbelian(axes.len()),
            Embedding::Generators { generators, .. } => Group::Free(generators.len()),
            Embedding::Cyclic { .. } => Group::integers(),
        }
    }

    pub fn map(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (Embedding::Axes { axes, rank }, GroupElement::Vector(v)) => {
                let mut out = vec![0; *rank];
                for (&axis, &x) in axes.iter().zip(v) {
                    out[axis] = x;
                }
                GroupElement::Vector(out)
            }
            (Embedding::Generators { generators, .. }, GroupElement::Word(w)) => GroupElement::Word(
                w.iter()
                    .map(|x| Letter::new(generators[x.index() - 1], x.is_inverse()))
                    .collect(),
            ),
            (Embedding::Cyclic { generator, .. }, GroupElement::Vector(v)) => {
                let letter = Letter::new(*generator, v[0] < 0);
                GroupElement::Word(vec![letter; v[0].unsigned_abs() as usize])
            }
            _ => panic!("element does not belong to the embedded group"),
        }
    }

    /// Inverse of [`Embedding::map`] on its image.
    pub fn pull_back(&self, g: &GroupElement) -> Option<GroupElement> {
        match (self, g) {
            (Embedding::Axes { axes, .. }, GroupElement::Vector(v)) => {
                let off_axes = v
                    .iter()
                    .enumerate()
                    .any(|(i, &x)| x != 0 && !axes.contains(&i));
                (!off_axes).then(|| GroupElement::Vector(axes.iter().map(|&a| v[a]).collect()))
            }
            (Embedding::Generators { generators, .. }, GroupElement::Word(w)) => w
                .iter()
                .map(|x| {
                    generators
                        .iter()
                        .position(|&i| i == x.index())
                        .map(|j| Letter::new(j + 1, x.is_inverse()))
                })
                .collect::<Option<Vec<_>>>()
                .map(GroupElement::Word),
            (Embedding::Cyclic { generator, .. }, GroupElement::Word(w)) => {
                let first = w.first().copied();
                match first {
                    None => Some(GroupElement::Vector(vec![0])),
                    Some(x) if x.index() == *generator && w.iter().all(|&y| y == x) => {
                        let n = w.len() as i64;
                        Some(GroupElement::Vector(vec![if x.is_inverse() { -n } else { n }]))
                    }
                    Some(_) => None,
                }
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub rule: LocalRule,
    pub group: Group,
    pub embedding: Embedding,
}

impl Restriction {
    /// The induced rule back on the supergroup.
    pub fn induce(&self) -> LocalRule {
        induce_rule(&self.rule, &self.embedding).expect("restriction matches its embedding")
    }
}

/// Induces `rule` along `embedding` onto the supergroup.
pub fn induce_rule(rule: &LocalRule, embedding: &Embedding) -> Result<LocalRule> {
    if rule.group() != embedding.domain() {
        return Err(Error::UnsupportedSubgroup(format!(
            "rule lives on {}, embedding expects {}",
            rule.group(),
            embedding.domain()
        )));
    }
    rule.relabel(embedding.supergroup(), |g| embedding.map(g))
}

/// Reinterprets `rule` on the smallest supported subgroup containing its neighborhood.
pub fn restrict_rule(rule: &LocalRule) -> Result<Restriction> {
    let group = rule.group();
    let elements = rule.neighborhood().elements();
    let embedding = match group {
        Group::FreeAbelian(d) => {
            let mut axes: Vec<usize> = (0..d)
                .filter(|&i| {
                    elements
                        .iter()
                        .any(|g| matches!(g, GroupElement::Vector(v) if v[i] != 0))
                })
                .collect();
            if axes.is_empty() {
                axes.push(0);
            }
            Embedding::Axes { axes, rank: d }
        }
        Group::Free(k) => {
            let mut used: Vec<usize> = (1..=k)
                .filter(|&i| elements.iter().flat_map(|g| g.letters()).any(|x| x.index() == i))
                .collect();
            if used.is_empty() {
                used.push(1);
            }
            if used.len() == 1 {
                Embedding::Cyclic {
                    generator: used[0],
                    rank: k,
                }
            } else {
                Embedding::Generators {
                    generators: used,
                    rank: k,
                }
            }
        }
    };
    let sub = embedding.domain();
    let restricted = rule.relabel(sub, |g| {
        embedding
            .pull_back(g)
            .expect("neighborhood lies in the chosen subgroup")
    })?;
    Ok(Restriction {
        rule: restricted,
        group: sub,
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::rule::{Alphabet, Neighborhood};

    #[test]
    fn planar_rule_on_a_line() {
        let z2 = Group::FreeAbelian(2);
        let n = Neighborhood::new(
            z2,
            vec![
                z2.parse_element("(-1,0)").unwrap(),
                z2.parse_element("(0,0)").unwrap(),
                z2.parse_element("(1,0)").unwrap(),
            ],
        )
        .unwrap();
        let rule = LocalRule::from_wolfram(n, 110).unwrap();
        let r = restrict_rule(&rule).unwrap();
        assert_eq!(r.group, Group::integers());
        assert_eq!(r.rule, LocalRule::elementary(110));
        assert_eq!(r.induce(), rule);
    }

    #[test]
    fn free_rule_on_one_generator() {
        let f2 = Group::Free(2);
        let n = Neighborhood::new(
            f2,
            vec![
                f2.parse_element("A").unwrap(),
                f2.parse_element("1").unwrap(),
                f2.parse_element("a").unwrap(),
            ],
        )
        .unwrap();
        let rule = LocalRule::from_wolfram(n, 30).unwrap();
        let r = restrict_rule(&rule).unwrap();
        assert_eq!(r.group, Group::integers());
        assert_eq!(r.rule, LocalRule::elementary(30));
        assert_eq!(r.induce(), rule);
        let z2 = Embedding::Axes { axes: vec![0], rank: 2 };
        assert!(matches!(induce_rule(&rule, &z2), Err(Error::UnsupportedSubgroup(_))));
    }

    #[test]
    fn full_neighborhood_is_unchanged() {
        let f2 = Group::Free(2);
        let disk = f2.disk(1, &Default::default()).unwrap();
        let n = Neighborhood::new(f2, disk.elements).unwrap();
        let rule = LocalRule::from_fn(Alphabet::binary(), n, |x| x[0]).unwrap();
        let r = restrict_rule(&rule).unwrap();
        assert_eq!(r.group, f2);
        assert_eq!(r.rule, rule);
    }

    #[test]
    fn subset_of_generators() {
        let f3 = Group::Free(3);
        let n = Neighborhood::new(
            f3,
            vec![f3.parse_element("aC").unwrap(), f3.parse_element("c").unwrap()],
        )
        .unwrap();
        let rule = LocalRule::from_fn(Alphabet::binary(), n, |x| x[0] & x[1]).unwrap();
        let r = restrict_rule(&rule).unwrap();
        assert_eq!(r.group, Group::Free(2));
        let names: Vec<String> = r.rule.neighborhood().elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["aB", "b"]);
        assert_eq!(r.induce(), rule);
    }
}
