//! Preimage counting and bounded balancedness checks.

use rayon::prelude::*;

use crate::ca::{decode, LocalRule, Pattern};
use crate::error::Result;
use crate::group::{Group, GroupElement};
use crate::limits::Limits;
use crate::symbolic::decide_balanced_1d;
use crate::verdict::{Certificate, LevelCount, PreimageCount, Verdict};
use crate::window::{advance, Stencil, Window};

/// Splits the `s^cells` assignments into prefix blocks; each block visits
/// its assignments in lexicographic order.
fn blocks(s: u8, cells: usize) -> (usize, usize) {
    let mut prefix = 0;
    let mut count = 1usize;
    while prefix < cells && count < 256 {
        prefix += 1;
        count *= s as usize;
    }
    (prefix, count)
}

fn for_each_in_block(s: u8, cells: usize, prefix: usize, block: usize, mut visit: impl FnMut(&[u8])) {
    let mut q = vec![0u8; cells];
    decode(block, s, &mut q[..prefix]);
    let free: Vec<usize> = (prefix..cells).collect();
    loop {
        visit(&q);
        if !advance(&mut q, &free, s) {
            break;
        }
    }
}

/// For every assignment of `targets` (indexed base `s`, first target most
/// significant), the number of assignments of `window` mapping onto it.
pub fn preimage_histogram(
    rule: &LocalRule,
    targets: &[GroupElement],
    window: &[GroupElement],
    limits: &Limits,
) -> Result<Vec<u128>> {
    let s = rule.states();
    limits.check_patterns("preimage candidates", s, window.len())?;
    let bins = limits.check_patterns("target patterns", s, targets.len())? as usize;
    let win = Window::new(window.to_vec());
    let stencil = Stencil::new(rule, &win, targets)?;
    let (prefix, count) = blocks(s, window.len());
    Ok((0..count)
        .into_par_iter()
        .map(|b| {
            let mut hist = vec![0u128; bins];
            for_each_in_block(s, window.len(), prefix, b, |q| {
                hist[stencil.image_index(q)] += 1;
            });
            hist
        })
        .reduce(
            || vec![0u128; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
}

/// Exact number of assignments `q: M -> S` with `q ->_f p`.
pub fn count_preimages(
    rule: &LocalRule,
    pattern: &Pattern,
    window: &[GroupElement],
    limits: &Limits,
) -> Result<PreimageCount> {
    let s = rule.states();
    let targets: Vec<GroupElement> = pattern.support().cloned().collect();
    let expected_image = pattern.values();
    limits.check_patterns("preimage candidates", s, window.len())?;
    let win = Window::new(window.to_vec());
    let stencil = Stencil::new(rule, &win, &targets)?;
    let (prefix, blocks_n) = blocks(s, window.len());
    let count = (0..blocks_n)
        .into_par_iter()
        .map(|b| {
            let mut n = 0u128;
            for_each_in_block(s, window.len(), prefix, b, |q| {
                if stencil.matches(q, &expected_image) {
                    n += 1;
                }
            });
            n
        })
        .sum();
    let free = window.len().saturating_sub(targets.len());
    Ok(PreimageCount {
        pattern: pattern.clone(),
        window_size: window.len(),
        count,
        expected: (s as u128).pow(free as u32),
    })
}

/// Checks that every pattern on `D_n` has `s^{|D_{n+r}| - |D_n|}` preimages
/// on `D_{n+r}` for `n <= n_max`.
///
/// A Yes is confirmation up to `n_max` only, except on `Z` where the exact
/// procedure settles it.
pub fn check_balanced(rule: &LocalRule, n_max: usize, limits: &Limits) -> Result<Verdict> {
    let group = rule.group();
    if group == Group::integers() {
        let mut v = decide_balanced_1d(rule, n_max, limits)?;
        v.basis = format!("{}; upgraded by the exact procedure on Z", v.basis);
        return Ok(v);
    }
    let r = rule.radius();
    let s = rule.states();
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let e = group.disk(n, limits)?;
        let m = group.disk(n + r, limits)?;
        let hist = preimage_histogram(rule, &e.elements, &m.elements, limits)?;
        let expected = (s as u128).pow((m.len() - e.len()) as u32);
        if let Some(bad) = hist.iter().position(|&c| c != expected) {
            let other = hist.iter().position(|&c| c != hist[bad]);
            let at = |i: usize| {
                let mut cells = vec![0u8; e.len()];
                decode(i, s, &mut cells);
                PreimageCount {
                    pattern: Pattern::on(&e.elements, &cells),
                    window_size: m.len(),
                    count: hist[i],
                    expected,
                }
            };
            return Ok(Verdict::no(
                Certificate::Deviation {
                    first: at(bad),
                    second: other.map(at),
                },
                "exhaustive preimage counting",
            )
            .with_bound(n));
        }
        levels.push(LevelCount {
            n,
            pattern_cells: e.len(),
            window_cells: m.len(),
            expected,
        });
    }
    Ok(Verdict::yes(
        Certificate::Balanced { levels },
        format!("verified up to n_max = {n_max}"),
    )
    .with_bound(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{Alphabet, Neighborhood};

    fn majority() -> LocalRule {
        let f2 = Group::Free(2);
        let n = Neighborhood::new(f2, f2.disk(1, &Limits::default()).unwrap().elements).unwrap();
        LocalRule::from_fn(Alphabet::binary(), n, |x| (x.iter().sum::<u8>() >= 3) as u8).unwrap()
    }

    #[test]
    fn rule102_counts_on_disks() {
        let z = Group::integers();
        let l = Limits::default();
        let rule = LocalRule::elementary(102);
        let m = z.disk(2, &l).unwrap().elements;
        for cells in [[0, 0, 0], [1, 0, 1], [1, 1, 0]] {
            let p = Pattern::on(&z.disk(1, &l).unwrap().elements, &cells);
            let c = count_preimages(&rule, &p, &m, &l).unwrap();
            assert_eq!((c.count, c.expected), (4, 4));
        }
    }

    #[test]
    fn majority_all_zero_center() {
        let f2 = Group::Free(2);
        let l = Limits::default();
        let p = Pattern::uniform(&[f2.identity()], 0);
        let c = count_preimages(&majority(), &p, &f2.disk(1, &l).unwrap().elements, &l).unwrap();
        assert_eq!((c.count, c.expected), (16, 16));
    }

    #[test]
    fn majority_unbalanced_at_level_one() {
        let l = Limits::default();
        assert!(check_balanced(&majority(), 0, &l).unwrap().is_yes());
        let v = check_balanced(&majority(), 1, &l).unwrap();
        assert!(v.is_no());
        assert_eq!(v.bound, Some(1));
        let Some(Certificate::Deviation { first, second }) = v.certificate else {
            panic!()
        };
        assert_ne!(first.count, first.expected);
        let second = second.unwrap();
        assert_ne!(first.count, second.count);
        // re-count both witnesses independently
        let m = Group::Free(2).disk(2, &l).unwrap().elements;
        for w in [first, second] {
            assert_eq!(count_preimages(&majority(), &w.pattern, &m, &l).unwrap().count, w.count);
        }
    }

    #[test]
    fn histogram_sums_to_all_candidates() {
        let l = Limits::default();
        let z = Group::integers();
        let h = preimage_histogram(
            &LocalRule::elementary(110),
            &z.disk(2, &l).unwrap().elements,
            &z.disk(3, &l).unwrap().elements,
            &l,
        )
        .unwrap();
        assert_eq!(h.iter().sum::<u128>(), 128);
    }

    #[test]
    fn identity_and_window_errors() {
        let l = Limits::default();
        let z = Group::integers();
        let id = LocalRule::identity(z, Alphabet::binary());
        let e = z.disk(1, &l).unwrap().elements;
        let p = Pattern::on(&e, &[1, 0, 1]);
        assert_eq!(count_preimages(&id, &p, &e, &l).unwrap().count, 1);
        let too_small = z.disk(0, &l).unwrap().elements;
        assert!(count_preimages(&LocalRule::elementary(102), &p, &too_small, &l).is_err());
        assert!(check_balanced(&id, 3, &l).unwrap().is_yes());
        let tight = Limits { patterns: 4, ..l };
        assert!(matches!(
            count_preimages(&id, &p, &e, &tight),
            Err(crate::Error::CapExceeded { .. })
        ));
    }
}
