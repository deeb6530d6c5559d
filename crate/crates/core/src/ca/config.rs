use std::collections::{BTreeMap, BTreeSet};

use crate::ca::pattern::Pattern;
use crate::ca::rule::LocalRule;
use crate::error::{Error, Result};
use crate::group::{mul_unchecked, Group, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Background {
    Uniform(u8),
    /// `x(i) = word[i mod |word|]`; only on `Z`.
    Periodic(Vec<u8>),
}

/// A background configuration plus a finite set of cells that differ from it.
///
/// Every `diff` entry differs from the background at that cell, so `diff`
/// is the difference set against the background.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatchedConfiguration {
    group: Group,
    background: Background,
    diff: BTreeMap<GroupElement, u8>,
}

impl PatchedConfiguration {
    pub fn new(
        group: Group,
        background: Background,
        diff: impl IntoIterator<Item = (GroupElement, u8)>,
    ) -> Result<PatchedConfiguration> {
        if let Background::Periodic(word) = &background {
            if group != Group::integers() {
                return Err(Error::Unsupported(format!(
                    "periodic backgrounds exist only on Z, not {group}"
                )));
            }
            if word.is_empty() {
                return Err(Error::InvalidInput("empty period".into()));
            }
        }
        let mut c = PatchedConfiguration {
            group,
            background,
            diff: BTreeMap::new(),
        };
        for (g, v) in diff {
            group.check(&g)?;
            c.set(g, v);
        }
        Ok(c)
    }

    pub fn uniform(group: Group, state: u8) -> PatchedConfiguration {
        PatchedConfiguration {
            group,
            background: Background::Uniform(state),
            diff: BTreeMap::new(),
        }
    }

    /// Uniform background with `pattern` pasted on top.
    pub fn patched(group: Group, state: u8, pattern: &Pattern) -> Result<PatchedConfiguration> {
        PatchedConfiguration::new(
            group,
            Background::Uniform(state),
            pattern.iter().map(|(g, v)| (g.clone(), v)),
        )
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn background(&self) -> &Background {
        &self.background
    }

    pub fn diff(&self) -> &BTreeMap<GroupElement, u8> {
        &self.diff
    }

    pub fn background_at(&self, g: &GroupElement) -> u8 {
        match &self.background {
            Background::Uniform(u) => *u,
            Background::Periodic(word) => match g {
                GroupElement::Vector(v) => word[v[0].rem_euclid(word.len() as i64) as usize],
                GroupElement::Word(_) => unreachable!("periodic background off Z"),
            },
        }
    }

    pub fn get(&self, g: &GroupElement) -> u8 {
        self.diff.get(g).copied().unwrap_or_else(|| self.background_at(g))
    }

    pub fn set(&mut self, g: GroupElement, state: u8) {
        if self.background_at(&g) == state {
            self.diff.remove(&g);
        } else {
            self.diff.insert(g, state);
        }
    }

    pub fn restrict(&self, support: &[GroupElement]) -> Pattern {
        Pattern::from_pairs(support.iter().map(|g| (g.clone(), self.get(g))))
    }

    /// `σ_g(c)(x) = c(g x)`.
    pub fn translate(&self, g: &GroupElement) -> Result<PatchedConfiguration> {
        self.group.check(g)?;
        let background = match &self.background {
            Background::Uniform(u) => Background::Uniform(*u),
            Background::Periodic(word) => {
                let GroupElement::Vector(v) = g else { unreachable!() };
                let k = v[0].rem_euclid(word.len() as i64) as usize;
                let mut w = word.clone();
                w.rotate_left(k);
                Background::Periodic(w)
            }
        };
        let ginv = g.inv();
        let diff = self
            .diff
            .iter()
            .map(|(x, &v)| (mul_unchecked(&ginv, x), v))
            .collect();
        Ok(PatchedConfiguration {
            group: self.group,
            background,
            diff,
        })
    }

    /// The global map `F(c)(g) = f(c(g n_1), .., c(g n_m))`.
    pub fn apply(&self, rule: &LocalRule) -> Result<PatchedConfiguration> {
        if rule.group() != self.group {
            return Err(Error::GroupMismatch(format!(
                "rule on {} applied to configuration on {}",
                rule.group(),
                self.group
            )));
        }
        let neighbors = rule.neighborhood().elements();
        let mut tuple = vec![0u8; neighbors.len()];
        let background = match &self.background {
            Background::Uniform(u) => {
                tuple.fill(*u);
                Background::Uniform(rule.eval(&tuple))
            }
            Background::Periodic(word) => {
                let p = word.len() as i64;
                let image = (0..p)
                    .map(|i| {
                        for (slot, n) in tuple.iter_mut().zip(neighbors) {
                            let GroupElement::Vector(v) = n else { unreachable!() };
                            *slot = word[(i + v[0]).rem_euclid(p) as usize];
                        }
                        rule.eval(&tuple)
                    })
                    .collect();
                Background::Periodic(image)
            }
        };
        let touched: BTreeSet<GroupElement> = self
            .diff
            .keys()
            .flat_map(|d| neighbors.iter().map(move |n| mul_unchecked(d, &n.inv())))
            .collect();
        let mut out = PatchedConfiguration {
            group: self.group,
            background,
            diff: BTreeMap::new(),
        };
        for g in touched {
            for (slot, n) in tuple.iter_mut().zip(neighbors) {
                *slot = self.get(&mul_unchecked(&g, n));
            }
            let v = rule.eval(&tuple);
            out.set(g, v);
        }
        Ok(out)
    }

    /// `Δ(c, c')` for two configurations over the same background.
    pub fn difference(&self, other: &PatchedConfiguration) -> Result<Vec<GroupElement>> {
        if self.group != other.group || self.background != other.background {
            return Err(Error::InvalidInput(
                "difference set needs a shared background".into(),
            ));
        }
        let keys: BTreeSet<&GroupElement> = self.diff.keys().chain(other.diff.keys()).collect();
        Ok(keys
            .into_iter()
            .filter(|g| self.get(g) != other.get(g))
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Group {
        Group::integers()
    }

    #[test]
    fn translate_moves_diff() {
        let c = PatchedConfiguration::new(z(), Background::Uniform(0), [(z().int(0), 1)]).unwrap();
        let t = c.translate(&z().int(3)).unwrap();
        assert_eq!(t.diff().keys().cloned().collect::<Vec<_>>(), vec![z().int(-3)]);
        assert_eq!(c.translate(&z().int(0)).unwrap(), c);
        let tt = c.translate(&z().int(2)).unwrap().translate(&z().int(5)).unwrap();
        assert_eq!(tt, c.translate(&z().int(7)).unwrap());
    }

    #[test]
    fn periodic_translate_rotates() {
        let c = PatchedConfiguration::new(z(), Background::Periodic(vec![0, 1, 1]), []).unwrap();
        let t = c.translate(&z().int(1)).unwrap();
        for i in -5..5 {
            assert_eq!(t.get(&z().int(i)), c.get(&z().int(i + 1)));
        }
    }

    #[test]
    fn rule102_spreads_one_cell_left() {
        let c = PatchedConfiguration::new(z(), Background::Uniform(0), [(z().int(0), 1)]).unwrap();
        let img = c.apply(&LocalRule::elementary(102)).unwrap();
        assert_eq!(img.background(), &Background::Uniform(0));
        assert_eq!(
            img.diff().iter().map(|(g, &v)| (g.clone(), v)).collect::<Vec<_>>(),
            vec![(z().int(0), 1), (z().int(-1), 1)]
        );
    }

    #[test]
    fn periodic_background_is_rejected_off_z() {
        assert!(matches!(
            PatchedConfiguration::new(Group::Free(2), Background::Periodic(vec![0, 1]), []),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn set_keeps_diff_canonical() {
        let mut c = PatchedConfiguration::uniform(z(), 1);
        c.set(z().int(4), 1);
        assert!(c.diff().is_empty());
        c.set(z().int(4), 0);
        c.set(z().int(4), 1);
        assert!(c.diff().is_empty());
    }
}
