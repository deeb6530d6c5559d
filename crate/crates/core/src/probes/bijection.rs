//! The bijection between preimage sets of two patterns under a reversible
//! rule, which shows that reversible rules are balanced.
//!
//! For patterns `p1`, `p2` on `D_n`, `Q_i` is the set of assignments of
//! `D_{n+r}` mapping onto `p_i`, with `D_r` covering both neighborhoods. The
//! map `T(q1)` extends `q1` by 0, applies the rule, splices `p2` into `D_n`,
//! applies the inverse and restricts to `D_{n+r}`.

use crate::ca::{LocalRule, PatchedConfiguration, Pattern};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::limits::Limits;
use crate::window::{advance, Stencil, Window};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    pub r: usize,
    pub first_count: usize,
    pub second_count: usize,
    /// `s^{|D_{n+r}| - |D_n|}`.
    pub expected: u128,
    /// `T` maps `Q_1` into `Q_2`.
    pub maps_into: bool,
    /// The reverse map undoes `T` on every element of `Q_1`.
    pub round_trip: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.maps_into
            && self.round_trip
            && self.first_count == self.second_count
            && self.first_count as u128 == self.expected
    }
}

fn preimage_set(
    rule: &LocalRule,
    p: &Pattern,
    window: &Window,
    targets: &[GroupElement],
) -> Result<Vec<Vec<u8>>> {
    let stencil = Stencil::new(rule, window, targets)?;
    let wanted: Vec<u8> = targets
        .iter()
        .map(|g| p.get(g).ok_or_else(|| Error::SupportViolation(g.to_string())))
        .collect::<Result<_>>()?;
    let free: Vec<usize> = (0..window.len()).collect();
    let mut q = vec![0u8; window.len()];
    let mut out = Vec::new();
    loop {
        if stencil.matches(&q, &wanted) {
            out.push(q.clone());
        }
        if !advance(&mut q, &free, rule.states()) {
            break;
        }
    }
    Ok(out)
}

fn transfer(
    rule: &LocalRule,
    inverse: &LocalRule,
    q: &[u8],
    window: &Window,
    splice: &Pattern,
) -> Result<Vec<u8>> {
    let group = rule.group();
    let e = PatchedConfiguration::patched(group, 0, &window.pattern(q))?;
    let mut c = e.apply(rule)?;
    for (g, x) in splice.iter() {
        c.set(g.clone(), x);
    }
    let back = c.apply(inverse)?;
    Ok(window.elements().iter().map(|g| back.get(g)).collect())
}

/// Builds `T_{1,2}` and `T_{2,1}` and checks them against each other.
pub fn balancedness_bijection(
    rule: &LocalRule,
    inverse: &LocalRule,
    first: &Pattern,
    second: &Pattern,
    n: usize,
    limits: &Limits,
) -> Result<BijectionReport> {
    if !(rule.compose(inverse)?.is_identity() && inverse.compose(rule)?.is_identity()) {
        return Err(Error::InvalidInput("inverse fails the composition check".into()));
    }
    let group = rule.group();
    let r = rule.radius().max(inverse.radius());
    if n < r {
        return Err(Error::Precondition(format!("n = {n} is below the radius {r}")));
    }
    let s = rule.states();
    let core = group.disk(n, limits)?;
    let window = Window::new(group.disk(n + r, limits)?.elements);
    limits.check_patterns("bijection candidates", s, window.len())?;
    let q1 = preimage_set(rule, first, &window, &core.elements)?;
    let q2 = preimage_set(rule, second, &window, &core.elements)?;
    let mut maps_into = true;
    let mut round_trip = true;
    for q in &q1 {
        let t = transfer(rule, inverse, q, &window, second)?;
        maps_into &= q2.binary_search(&t).is_ok();
        round_trip &= transfer(rule, inverse, &t, &window, first)? == *q;
    }
    Ok(BijectionReport {
        n,
        r,
        first_count: q1.len(),
        second_count: q2.len(),
        expected: (s as u128).pow((window.len() - core.len()) as u32),
        maps_into,
        round_trip,
    })
}
