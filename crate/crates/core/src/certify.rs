//! Independent re-verification of certificates attached to verdicts.

use crate::ca::{LocalRule, Pattern};
use crate::error::{Error, Result};
use crate::group::{Disk, Group};
use crate::limits::Limits;
use crate::probes::{check_erasable_patterns, count_preimages, preimage_histogram};
use crate::symbolic::{
    check_erasable_words, check_orphan, check_pair_closure, check_periodic_pair, check_subset_closure,
};
use crate::verdict::{Certificate, LevelCount, PreimageCount, Status, Verdict};
use crate::window::{advance, Stencil, Window};

/// The disk of `group` with exactly `size` elements.
fn disk_of_size(group: &Group, size: usize, limits: &Limits) -> Result<Option<Disk>> {
    let size = size as u128;
    for r in 0.. {
        match group.disk_size(r) {
            Some(n) if n == size => return group.disk(r, limits).map(Some),
            Some(n) if n < size && (r == 0 || group.disk_size(r - 1) != Some(n)) => continue,
            _ => return Ok(None),
        }
    }
    unreachable!()
}

fn recount(rule: &LocalRule, c: &PreimageCount, limits: &Limits) -> Result<bool> {
    let group = rule.group();
    let Some(window) = disk_of_size(&group, c.window_size, limits)? else {
        return Ok(false);
    };
    let fresh = count_preimages(rule, &c.pattern, &window.elements, limits)?;
    Ok(fresh.count == c.count && fresh.expected == c.expected)
}

fn level_holds(rule: &LocalRule, level: &LevelCount, limits: &Limits) -> Result<bool> {
    let group = rule.group();
    let targets = group.disk(level.n, limits)?;
    let Some(window) = disk_of_size(&group, level.window_cells, limits)? else {
        return Ok(false);
    };
    if targets.len() != level.pattern_cells {
        return Ok(false);
    }
    let hist = preimage_histogram(rule, &targets.elements, &window.elements, limits)?;
    Ok(hist.iter().all(|&c| c == level.expected))
}

/// True when no `e'` differing from `e` only inside `D_radius` has the image
/// of `e` with the identity cell switched to `state`, checked on
/// `D_{radius + R}`.
pub fn check_uncorrectable(rule: &LocalRule, e: &Pattern, state: u8, radius: usize, limits: &Limits) -> Result<bool> {
    let group = rule.group();
    let s = rule.states();
    let r = rule.radius();
    if state >= s {
        return Ok(false);
    }
    let window = Window::new(group.disk(radius + 2 * r, limits)?.elements);
    let targets = group.disk(radius + r, limits)?;
    let stencil = Stencil::new(rule, &window, &targets.elements)?;
    let mut cells = window.cells(e)?;
    let mut wanted = vec![0u8; targets.len()];
    stencil.image_into(&cells, &mut wanted);
    if wanted[0] == state {
        return Ok(false);
    }
    wanted[0] = state;
    let inner = group.disk(radius, limits)?.len();
    limits.check_patterns("correction patches", s, inner)?;
    let free: Vec<usize> = (0..inner).collect();
    cells[..inner].fill(0);
    loop {
        if stencil.matches(&cells, &wanted) {
            return Ok(false);
        }
        if !advance(&mut cells, &free, s) {
            return Ok(true);
        }
    }
}

/// Re-verifies the certificate of `verdict` against `rule` from scratch.
///
/// `Some(true)` when the certificate holds and fits the verdict's status,
/// `Some(false)` when it does not, and `None` for certificates that need
/// more context than the rule (graph certificates, correction summaries)
/// or verdicts without one.
pub fn recheck(rule: &LocalRule, verdict: &Verdict, limits: &Limits) -> Result<Option<bool>> {
    let Some(cert) = &verdict.certificate else {
        return Ok(None);
    };
    let expect = |status: Status, ok: bool| Ok(Some(ok && verdict.status == status));
    // erasability evidence backs a Yes from the erasable-pattern search and
    // a No from pre-injectivity alike
    let either = |ok: bool| Ok(Some(ok && verdict.status != Status::Unknown));
    match cert {
        Certificate::Orphan { word } => expect(Status::No, check_orphan(rule, word)?),
        Certificate::ErasableWords {
            left,
            middle,
            alternate,
            right,
        } => either(check_erasable_words(rule, left, middle, alternate, right)?),
        Certificate::PeriodicPair { first, second } => {
            expect(Status::No, check_periodic_pair(rule, first, second)?)
        }
        Certificate::SubsetClosure { subsets } => expect(Status::Yes, check_subset_closure(rule, subsets)?),
        Certificate::PairClosure { pairs } => either(check_pair_closure(rule, pairs)?),
        Certificate::Inverse { rule: inverse } => {
            let ok = inverse.group() == rule.group()
                && inverse.states() == rule.states()
                && rule.compose(inverse)?.is_identity()
                && inverse.compose(rule)?.is_identity();
            expect(Status::Yes, ok)
        }
        Certificate::Deviation { first, second } => {
            let mut ok = recount(rule, first, limits)?;
            let mut deviates = first.count != first.expected;
            if let Some(second) = second {
                ok &= recount(rule, second, limits)?;
                deviates |= second.count != first.count;
            }
            expect(Status::No, ok && deviates)
        }
        Certificate::Balanced { levels } => {
            let mut ok = true;
            for level in levels {
                ok &= level_holds(rule, level, limits)?;
            }
            expect(Status::Yes, ok)
        }
        Certificate::ErasablePatterns { m, first, second } => {
            either(check_erasable_patterns(rule, *m, first, second, limits)?)
        }
        Certificate::Uncorrectable { e, state, radius } => {
            let ok = check_uncorrectable(rule, e, *state, *radius, limits)?;
            Ok(Some(ok && verdict.status != Status::Yes))
        }
        Certificate::Correction { .. } | Certificate::BallMismatch { .. } | Certificate::Approximation { .. } => {
            Ok(None)
        }
    }
}

/// [`recheck`], turning a rejected certificate into an error.
pub fn require_valid(rule: &LocalRule, verdict: &Verdict, limits: &Limits) -> Result<()> {
    match recheck(rule, verdict, limits)? {
        Some(false) => Err(Error::Inconsistent(format!(
            "{} certificate does not support the verdict {}",
            verdict.certificate.as_ref().map_or("missing", |c| c.kind()),
            verdict.status
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{majority_f2, non_postsurj_witness_f2};
    use crate::probes::{check_balanced, find_mutually_erasable};
    use crate::symbolic::{decide_balanced_1d, decide_preinjective, decide_reversible, decide_surjective};

    #[test]
    fn exact_certificates_recheck() {
        let l = Limits::default();
        for code in [0u8, 15, 30, 90, 102, 110, 170, 232] {
            let rule = LocalRule::elementary(code);
            for v in [
                decide_surjective(&rule, &l).unwrap(),
                decide_preinjective(&rule, &l).unwrap(),
                decide_reversible(&rule, &l).unwrap(),
                decide_balanced_1d(&rule, 2, &l).unwrap(),
            ] {
                assert_eq!(recheck(&rule, &v, &l).unwrap(), Some(true), "rule {code}: {v:?}");
            }
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let l = Limits::default();
        let rule = LocalRule::elementary(102);
        let mut v = decide_surjective(&rule, &l).unwrap();
        v.status = Status::No;
        assert_eq!(recheck(&rule, &v, &l).unwrap(), Some(false));
        let fake = Verdict::no(Certificate::Orphan { word: vec![1, 0] }, "made up");
        assert_eq!(recheck(&rule, &fake, &l).unwrap(), Some(false));
        let fake = Verdict::yes(Certificate::Inverse { rule: rule.clone() }, "made up");
        assert_eq!(recheck(&rule, &fake, &l).unwrap(), Some(false));
        assert!(require_valid(&rule, &fake, &l).is_err());
    }

    #[test]
    fn majority_certificates_recheck() {
        let l = Limits::default();
        let rule = majority_f2();
        let v = find_mutually_erasable(&rule, 0, &l).unwrap();
        assert_eq!(recheck(&rule, &v, &l).unwrap(), Some(true));
        let v = check_balanced(&rule, 1, &l).unwrap();
        assert_eq!(recheck(&rule, &v, &l).unwrap(), Some(true));
    }

    #[test]
    fn uncorrectable_witness() {
        let l = Limits::default();
        let w = non_postsurj_witness_f2(4).unwrap();
        let rule = majority_f2();
        assert!(check_uncorrectable(&rule, &w.e, 1, 1, &l).unwrap());
        assert!(!check_uncorrectable(&rule, &w.e, 0, 1, &l).unwrap());
        let zero = LocalRule::elementary(170);
        let z = Group::integers();
        let e = Pattern::uniform(&z.disk(3, &l).unwrap().elements, 0);
        assert!(!check_uncorrectable(&zero, &e, 1, 1, &l).unwrap());
    }
}
