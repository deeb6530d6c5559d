//! The worked examples as ready-made objects.

use std::collections::BTreeMap;

use crate::ca::{apply_pattern, Alphabet, LocalRule, Neighborhood, Pattern};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::limits::Limits;
use crate::symbolic::Sft;

/// Rule 102 in its minimal form: `x ↦ x_0 XOR x_1` on `Z`.
pub fn xor_rule102() -> LocalRule {
    LocalRule::from_fn(Alphabet::binary(), Neighborhood::interval(0, 1), |x| x[0] ^ x[1])
        .expect("two-cell xor")
}

/// Majority of the five cells `1, a, A, b, B` on `F_2`.
pub fn majority_f2() -> LocalRule {
    let f2 = Group::Free(2);
    let d1 = f2.disk(1, &Limits::default()).expect("five elements").elements;
    let n = Neighborhood::new(f2, d1).expect("distinct elements");
    LocalRule::from_fn(Alphabet::binary(), n, |x| u8::from(x.iter().sum::<u8>() >= 3))
        .expect("threshold table")
}

/// Binary sequences without two consecutive ones.
pub fn golden_mean() -> Sft {
    Sft::new(2, vec![vec![1, 1]]).expect("valid forbidden word")
}

fn parent(g: &GroupElement) -> Option<GroupElement> {
    match g {
        GroupElement::Word(w) if !w.is_empty() => Some(GroupElement::Word(w[..w.len() - 1].to_vec())),
        _ => None,
    }
}

/// The three (or, at the identity, four) neighbors of `g` one step further
/// from the identity, in generator order.
fn children(group: &Group, g: &GroupElement) -> Vec<GroupElement> {
    group
        .letters()
        .into_iter()
        .map(|x| g.mul_letter(x))
        .filter(|h| h.length() > g.length())
        .collect()
}

fn cell(p: &BTreeMap<GroupElement, u8>, g: &GroupElement) -> Result<u8> {
    p.get(g).copied().ok_or_else(|| Error::SupportViolation(g.to_string()))
}

/// A preimage `e` on `D_{n+1}` of `c` under the majority rule, built so that
/// exactly three of the five cells seen by each `g ∈ D_n` agree with `c(g)`.
///
/// Built outward: each `g` already knows `e(g)` and `e(parent)`, so the
/// first of its children (in generator order) get `c(g)` until three cells
/// agree and the rest get the other state. `core` optionally fixes `e` on
/// `D_1`; it must itself give exactly three agreements at the identity.
pub fn critical_preimage(c: &Pattern, n: usize, core: Option<&Pattern>) -> Result<Pattern> {
    let f2 = Group::Free(2);
    let limits = Limits::default();
    let c: BTreeMap<GroupElement, u8> = c.iter().map(|(g, v)| (g.clone(), v)).collect();
    if c.values().any(|&v| v > 1) {
        return Err(Error::AlphabetMismatch(3, 2));
    }
    let mut e: BTreeMap<GroupElement, u8> = BTreeMap::new();
    let identity = f2.identity();
    let want = cell(&c, &identity)?;
    match core {
        Some(core) => {
            for g in f2.disk(1, &limits)?.elements {
                let v = core.get(&g).ok_or_else(|| Error::SupportViolation(g.to_string()))?;
                e.insert(g, v);
            }
            let agree = e.values().filter(|&&v| v == want).count();
            if agree != 3 {
                return Err(Error::Precondition(format!(
                    "core has {agree} cells agreeing with the identity's image, not 3"
                )));
            }
        }
        None => {
            e.insert(identity.clone(), want);
            for (i, h) in children(&f2, &identity).into_iter().enumerate() {
                e.insert(h, if i < 2 { want } else { 1 - want });
            }
        }
    }
    for len in 1..=n {
        for g in f2.disk(len, &limits)?.elements.into_iter().filter(|g| g.length() == len) {
            let want = cell(&c, &g)?;
            let up = parent(&g).expect("nonidentity element");
            let agree = usize::from(e[&g] == want) + usize::from(e[&up] == want);
            for (i, h) in children(&f2, &g).into_iter().enumerate() {
                e.insert(h, if i + agree < 3 { want } else { 1 - want });
            }
        }
    }
    Ok(Pattern::from_pairs(e))
}

/// For each `g ∈ D_n`, how many of the five cells it sees agree with `c(g)`.
pub fn agreement_counts(e: &Pattern, c: &Pattern, n: usize) -> Result<Vec<usize>> {
    let f2 = Group::Free(2);
    let limits = Limits::default();
    let rule = majority_f2();
    f2.disk(n, &limits)?
        .elements
        .iter()
        .map(|g| {
            let want = c.get(g).ok_or_else(|| Error::SupportViolation(g.to_string()))?;
            rule.neighborhood()
                .elements()
                .iter()
                .map(|m| {
                    let gm = f2.mul(g, m)?;
                    e.get(&gm)
                        .map(|v| usize::from(v == want))
                        .ok_or_else(|| Error::SupportViolation(gm.to_string()))
                })
                .sum()
        })
        .collect()
}

/// True when majority maps `e` to `c` on `D_n` with exactly three agreeing
/// cells everywhere.
pub fn is_critical_preimage(e: &Pattern, c: &Pattern, n: usize) -> Result<bool> {
    let d = Group::Free(2).disk(n, &Limits::default())?.elements;
    let image = apply_pattern(&majority_f2(), e, &d)?;
    Ok(image == c.restrict(&d)? && agreement_counts(e, c, n)?.iter().all(|&k| k == 3))
}

/// A configuration `c` whose single-site change at the identity cannot be
/// lifted, together with a critical preimage `e` and the changed `c'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPostSurjectiveWitness {
    pub depth: usize,
    /// `c` on `D_depth`.
    pub c: Pattern,
    /// Critical preimage of `c`, on `D_depth`, agreeing with `c` on `D_1`.
    pub e: Pattern,
    /// `c` with the identity switched to 1.
    pub c_prime: Pattern,
}

/// `c(1) = c(a) = c(b) = 0` and `c(A) = c(B) = 1`; below that, the children
/// of each `g` get `0, 1, c(g)` in generator order, so every cell has both
/// states among its children.
pub fn non_postsurj_witness_f2(depth: usize) -> Result<NonPostSurjectiveWitness> {
    if depth < 2 {
        return Err(Error::Precondition("the witness needs depth at least 2".into()));
    }
    let f2 = Group::Free(2);
    let limits = Limits::default();
    let mut c: BTreeMap<GroupElement, u8> = BTreeMap::new();
    for lit in ["1", "a", "b"] {
        c.insert(f2.parse_element(lit)?, 0);
    }
    for lit in ["A", "B"] {
        c.insert(f2.parse_element(lit)?, 1);
    }
    for len in 1..depth {
        for g in f2.disk(len, &limits)?.elements.into_iter().filter(|g| g.length() == len) {
            let here = c[&g];
            for (h, v) in children(&f2, &g).into_iter().zip([0, 1, here]) {
                c.insert(h, v);
            }
        }
    }
    let c = Pattern::from_pairs(c);
    let core = c.restrict(&f2.disk(1, &limits)?.elements)?;
    let e = critical_preimage(&c, depth - 1, Some(&core))?;
    let mut c_prime = c.clone();
    c_prime.set(f2.identity(), 1);
    Ok(NonPostSurjectiveWitness {
        depth,
        c,
        e,
        c_prime,
    })
}

/// Every element of length below `radius` has children with both states.
pub fn has_mixed_children(c: &Pattern, radius: usize) -> Result<bool> {
    let f2 = Group::Free(2);
    for g in f2.disk(radius.saturating_sub(1), &Limits::default())?.elements {
        let states: Vec<u8> = children(&f2, &g)
            .iter()
            .map(|h| c.get(h).ok_or_else(|| Error::SupportViolation(h.to_string())))
            .collect::<Result<_>>()?;
        if !(states.contains(&0) && states.contains(&1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn majority_table() {
        let m = majority_f2();
        assert_eq!(m.eval(&[1, 1, 1, 1, 1]), 1);
        assert_eq!(m.eval(&[1, 1, 1, 0, 0]), 1);
        assert_eq!(m.eval(&[1, 1, 0, 0, 0]), 0);
        assert_eq!(m.wolfram_code(), Some(4276676736));
    }

    #[test]
    fn xor_table() {
        let x = xor_rule102();
        assert_eq!(x.table(), &[0, 1, 1, 0]);
        assert!(x.same_map(&LocalRule::elementary(102)));
    }

    #[test]
    fn critical_preimages_of_uniform_patterns() {
        let f2 = Group::Free(2);
        let d2 = f2.disk(2, &Limits::default()).unwrap().elements;
        let zero = Pattern::uniform(&d2, 0);
        let e0 = critical_preimage(&zero, 1, None).unwrap();
        assert!(is_critical_preimage(&e0, &zero, 1).unwrap());
        let one = Pattern::uniform(&d2, 1);
        let e1 = critical_preimage(&one, 1, None).unwrap();
        let flipped: Vec<u8> = e0.values().iter().map(|v| 1 - v).collect();
        assert_eq!(e1.values(), flipped);
    }

    #[test]
    fn random_critical_preimages() {
        let f2 = Group::Free(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=2 {
            let d = f2.disk(n + 1, &Limits::default()).unwrap().elements;
            for _ in 0..10 {
                let cells: Vec<u8> = d.iter().map(|_| rng.gen_range(0..2)).collect();
                let c = Pattern::on(&d, &cells);
                let e = critical_preimage(&c, n, None).unwrap();
                assert_eq!(e.len(), d.len());
                assert!(is_critical_preimage(&e, &c, n).unwrap());
            }
        }
    }

    #[test]
    fn witness_conditions() {
        let w = non_postsurj_witness_f2(4).unwrap();
        assert!(has_mixed_children(&w.c, 4).unwrap());
        assert!(is_critical_preimage(&w.e, &w.c, 3).unwrap());
        let d1 = Group::Free(2).disk(1, &Limits::default()).unwrap().elements;
        assert_eq!(w.e.restrict(&d1).unwrap(), w.c.restrict(&d1).unwrap());
        assert_eq!(w.c.len(), 161);
        assert_eq!(w.e.len(), 161);
    }
}
