use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{mul_unchecked, Group, GroupElement};
use crate::limits::Limits;

/// The state set `{0, .., s-1}`, `s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(size: u8) -> Result<Alphabet> {
        if size < 2 {
            return Err(Error::InvalidInput(format!(
                "alphabet needs at least two states, got {size}"
            )));
        }
        Ok(Alphabet(size))
    }

    pub fn binary() -> Alphabet {
        Alphabet(2)
    }

    pub fn size(self) -> u8 {
        self.0
    }
}

/// An ordered list of distinct group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    group: Group,
    elements: Vec<GroupElement>,
}

impl Neighborhood {
    pub fn new(group: Group, elements: Vec<GroupElement>) -> Result<Neighborhood> {
        if elements.is_empty() {
            return Err(Error::InvalidInput("empty neighborhood".into()));
        }
        for (i, g) in elements.iter().enumerate() {
            group.check(g)?;
            if elements[..i].contains(g) {
                return Err(Error::InvalidInput(format!("repeated neighbor {g}")));
            }
        }
        Ok(Neighborhood { group, elements })
    }

    /// Neighborhood `{lo, .., hi}` on `Z`.
    pub fn interval(lo: i64, hi: i64) -> Neighborhood {
        let group = Group::integers();
        let elements = (lo..=hi).map(|x| group.int(x)).collect();
        Neighborhood::new(group, elements).expect("nonempty interval")
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal `R` with `N ⊆ D_R`.
    pub fn radius(&self) -> usize {
        self.elements.iter().map(|g| g.length()).max().unwrap_or(0)
    }
}

/// A local update rule: a total table from neighborhood tuples to states.
///
/// Tuples are indexed lexicographically in neighborhood order with the
/// first neighbor most significant, state 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<u8>,
}

impl LocalRule {
    pub fn new(alphabet: Alphabet, neighborhood: Neighborhood, table: Vec<u8>) -> Result<LocalRule> {
        let s = alphabet.size();
        let expected = Limits::default().check_patterns("rule table", s, neighborhood.len())?;
        if table.len() as u128 != expected {
            return Err(Error::InvalidInput(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= s) {
            return Err(Error::InvalidInput(format!("table entry {bad} is not a state")));
        }
        Ok(LocalRule {
            alphabet,
            neighborhood,
            table,
        })
    }

    pub fn from_fn(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        mut f: impl FnMut(&[u8]) -> u8,
    ) -> Result<LocalRule> {
        let s = alphabet.size();
        let m = neighborhood.len();
        let n = Limits::default().check_patterns("rule table", s, m)? as usize;
        let mut tuple = vec![0u8; m];
        let mut table = Vec::with_capacity(n);
        for idx in 0..n {
            decode(idx, s, &mut tuple);
            table.push(f(&tuple));
        }
        LocalRule::new(alphabet, neighborhood, table)
    }

    /// Binary rule from a Wolfram code: bit `i` of `code` is the output for tuple index `i`.
    pub fn from_wolfram(neighborhood: Neighborhood, code: u64) -> Result<LocalRule> {
        let m = neighborhood.len();
        if m > 6 {
            return Err(Error::InvalidInput(format!(
                "wolfram codes cover at most 6 neighbors, got {m}"
            )));
        }
        let entries = 1usize << m;
        if entries < 64 && code >> entries != 0 {
            return Err(Error::InvalidInput(format!(
                "wolfram code {code} exceeds 2^{entries}"
            )));
        }
        let table = (0..entries).map(|i| ((code >> i) & 1) as u8).collect();
        LocalRule::new(Alphabet::binary(), neighborhood, table)
    }

    /// Elementary CA with neighborhood `{-1, 0, 1}`.
    pub fn elementary(code: u8) -> LocalRule {
        LocalRule::from_wolfram(Neighborhood::interval(-1, 1), code as u64)
            .expect("elementary codes fit")
    }

    /// The identity rule on `{1_G}`.
    pub fn identity(group: Group, alphabet: Alphabet) -> LocalRule {
        let n = Neighborhood::new(group, vec![group.identity()]).expect("identity neighborhood");
        LocalRule::new(alphabet, n, (0..alphabet.size()).collect()).expect("identity table")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn states(&self) -> u8 {
        self.alphabet.size()
    }

    pub fn group(&self) -> Group {
        self.neighborhood.group()
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn radius(&self) -> usize {
        self.neighborhood.radius()
    }

    pub fn index_of(&self, tuple: &[u8]) -> usize {
        let s = self.states() as usize;
        tuple.iter().fold(0, |acc, &x| acc * s + x as usize)
    }

    pub fn eval(&self, tuple: &[u8]) -> u8 {
        self.table[self.index_of(tuple)]
    }

    /// Wolfram code of a binary rule with at most 6 neighbors.
    pub fn wolfram_code(&self) -> Option<u64> {
        if self.states() != 2 || self.neighborhood.len() > 6 {
            return None;
        }
        Some(
            self.table
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << i)),
        )
    }

    /// The rule of `F ∘ H` where `self = F` and `inner = H`; neighborhood `N_F · N_H`.
    pub fn compose(&self, inner: &LocalRule) -> Result<LocalRule> {
        if self.states() != inner.states() {
            return Err(Error::AlphabetMismatch(self.states(), inner.states()));
        }
        if self.group() != inner.group() {
            return Err(Error::GroupMismatch(format!(
                "cannot compose rules on {} and {}",
                self.group(),
                inner.group()
            )));
        }
        let mut product: Vec<GroupElement> = self
            .neighborhood
            .elements()
            .iter()
            .flat_map(|a| inner.neighborhood.elements().iter().map(move |b| mul_unchecked(a, b)))
            .collect();
        product.sort();
        product.dedup();
        let pos: HashMap<&GroupElement, usize> =
            product.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let wiring: Vec<Vec<usize>> = self
            .neighborhood
            .elements()
            .iter()
            .map(|a| {
                inner
                    .neighborhood
                    .elements()
                    .iter()
                    .map(|b| pos[&mul_unchecked(a, b)])
                    .collect()
            })
            .collect();
        let neighborhood = Neighborhood::new(self.group(), product.clone())?;
        let mut inner_tuple = vec![0u8; inner.neighborhood.len()];
        let mut outer_tuple = vec![0u8; self.neighborhood.len()];
        LocalRule::from_fn(self.alphabet, neighborhood, |x| {
            for (slot, wires) in outer_tuple.iter_mut().zip(&wiring) {
                for (v, &w) in inner_tuple.iter_mut().zip(wires) {
                    *v = x[w];
                }
                *slot = inner.eval(&inner_tuple);
            }
            self.eval(&outer_tuple)
        })
    }

    /// Drops neighbors the table ignores and sorts the rest.
    ///
    /// Two rules have the same global map iff their canonical forms are equal.
    /// A constant rule canonicalizes to neighborhood `{1_G}`.
    pub fn canonical(&self) -> LocalRule {
        let s = self.states() as usize;
        let m = self.neighborhood.len();
        let mut relevant = vec![false; m];
        let mut tuple = vec![0u8; m];
        for (idx, &out) in self.table.iter().enumerate() {
            decode(idx, self.states(), &mut tuple);
            let mut weight = 1usize;
            for j in (0..m).rev() {
                if !relevant[j] && tuple[j] == 0 {
                    for v in 1..s {
                        if self.table[idx + v * weight] != out {
                            relevant[j] = true;
                            break;
                        }
                    }
                }
                weight *= s;
            }
        }
        let mut keep: Vec<usize> = (0..m).filter(|&j| relevant[j]).collect();
        if keep.is_empty() {
            let group = self.group();
            let constant = self.table[0];
            let n = Neighborhood::new(group, vec![group.identity()]).expect("identity");
            return LocalRule::new(self.alphabet, n, vec![constant; s]).expect("constant");
        }
        keep.sort_by(|&a, &b| self.neighborhood.elements[a].cmp(&self.neighborhood.elements[b]));
        let elements = keep
            .iter()
            .map(|&j| self.neighborhood.elements[j].clone())
            .collect();
        let n = Neighborhood::new(self.group(), elements).expect("subset of valid neighborhood");
        let mut full = vec![0u8; m];
        LocalRule::from_fn(self.alphabet, n, |x| {
            for (&j, &v) in keep.iter().zip(x) {
                full[j] = v;
            }
            self.eval(&full)
        })
        .expect("smaller table fits")
    }

    /// True when both rules induce the same global map.
    pub fn same_map(&self, other: &LocalRule) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn is_identity(&self) -> bool {
        self.same_map(&LocalRule::identity(self.group(), self.alphabet))
    }

    /// The same rule on an isomorphic copy of the neighborhood.
    pub fn relabel(&self, group: Group, map: impl Fn(&GroupElement) -> GroupElement) -> Result<LocalRule> {
        let elements = self.neighborhood.elements().iter().map(map).collect();
        LocalRule::new(
            self.alphabet,
            Neighborhood::new(group, elements)?,
            self.table.clone(),
        )
    }
}

/// Writes the base-`s` digits of `idx` into `out`, most significant first.
pub(crate) fn decode(mut idx: usize, s: u8, out: &mut [u8]) {
    let s = s as usize;
    for slot in out.iter_mut().rev() {
        *slot = (idx % s) as u8;
        idx /= s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor102() -> LocalRule {
        LocalRule::from_fn(Alphabet::binary(), Neighborhood::interval(0, 1), |x| x[0] ^ x[1]).unwrap()
    }

    #[test]
    fn elementary_tables() {
        let r = LocalRule::elementary(102);
        assert_eq!(r.table(), &[0, 1, 1, 0, 0, 1, 1, 0]);
        assert_eq!(r.wolfram_code(), Some(102));
        assert!(r.same_map(&xor102()));
        // rule 170 reads the right neighbor
        assert_eq!(LocalRule::elementary(170).canonical().neighborhood().elements(), &[Group::integers().int(1)]);
    }

    #[test]
    fn invalid_tables() {
        let n = Neighborhood::interval(0, 1);
        assert!(LocalRule::new(Alphabet::binary(), n.clone(), vec![0, 1, 1]).is_err());
        assert!(LocalRule::new(Alphabet::binary(), n.clone(), vec![0, 1, 1, 2]).is_err());
        assert!(LocalRule::from_wolfram(n, 16).is_err());
        assert!(Alphabet::new(1).is_err());
        let z = Group::integers();
        assert!(Neighborhood::new(z, vec![]).is_err());
        assert!(Neighborhood::new(z, vec![z.int(0), z.int(0)]).is_err());
    }

    #[test]
    fn compose_examples() {
        let z = Group::integers();
        let id = LocalRule::identity(z, Alphabet::binary());
        let r = LocalRule::elementary(30);
        assert!(id.compose(&r).unwrap().same_map(&r));
        assert!(r.compose(&id).unwrap().same_map(&r));

        let left = LocalRule::elementary(170);
        let right = LocalRule::elementary(240);
        assert!(left.compose(&right).unwrap().is_identity());

        let twice = xor102().compose(&xor102()).unwrap();
        assert_eq!(twice.neighborhood().len(), 3);
        let c = twice.canonical();
        assert_eq!(c.neighborhood().elements(), &[z.int(0), z.int(2)]);
        assert_eq!(c.table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let three = LocalRule::identity(Group::integers(), Alphabet::new(3).unwrap());
        assert!(matches!(
            three.compose(&xor102()),
            Err(Error::AlphabetMismatch(3, 2))
        ));
    }

    #[test]
    fn canonical_of_constant() {
        let zero = LocalRule::elementary(0).canonical();
        assert_eq!(zero.neighborhood().elements(), &[Group::integers().int(0)]);
        assert_eq!(zero.table(), &[0, 0]);
    }
}
