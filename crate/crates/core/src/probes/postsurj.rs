//! Bounded probe for post-surjectivity: can a single-site change of an
//! image be lifted to a change of the preimage inside a small disk?

use crate::ca::{LocalRule, Pattern};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;
use crate::symbolic::decide_postsurjective_1d;
use crate::verdict::{Certificate, Status, Verdict};
use crate::window::{advance, Stencil, Window};

/// Preimages `e` whose images get perturbed at `1_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSet {
    /// Uniform configurations in these states.
    Uniform(Vec<u8>),
    /// Every configuration equal to `state` outside `D_radius`.
    Patched { state: u8, radius: usize },
    /// Explicit configurations, given on a disk containing `D_{n_max+2R}`.
    Explicit(Vec<Pattern>),
}

impl Default for WitnessSet {
    fn default() -> Self {
        WitnessSet::Uniform(vec![0])
    }
}

fn instances(
    set: &WitnessSet,
    window: &Window,
    s: u8,
    group: Group,
    limits: &Limits,
) -> Result<Vec<Vec<u8>>> {
    match set {
        WitnessSet::Uniform(states) => Ok(states.iter().map(|&u| vec![u; window.len()]).collect()),
        WitnessSet::Patched { state, radius } => {
            let inner = group.disk(*radius, limits)?.len().min(window.len());
            limits.check_patterns("witness patches", s, inner)?;
            let free: Vec<usize> = (0..inner).collect();
            let mut q = vec![*state; window.len()];
            q[..inner].fill(0);
            let mut out = vec![q.clone()];
            while advance(&mut q, &free, s) {
                out.push(q.clone());
            }
            Ok(out)
        }
        WitnessSet::Explicit(patterns) => patterns.iter().map(|p| window.cells(p)).collect(),
    }
}

/// For each witness `e` and each state `t != F(e)(1_G)`, searches for `e'`
/// with `Δ(e, e') ⊆ D_N` and `F(e') = F(e)` except `F(e')(1_G) = t`, for
/// `N = 0..=n_max`. Yes carries the largest `N` any instance needed; a
/// failed instance is the evidence for No (exact on `Z`) or Unknown.
pub fn post_surjectivity_probe(
    rule: &LocalRule,
    witnesses: &WitnessSet,
    n_max: usize,
    limits: &Limits,
) -> Result<Verdict> {
    let group = rule.group();
    let s = rule.states();
    let r = rule.radius();
    let window = Window::new(group.disk(n_max + 2 * r, limits)?.elements);
    let levels: Vec<(usize, Stencil)> = (0..=n_max)
        .map(|n| {
            let free = group.disk(n, limits)?.len();
            let targets = group.disk(n + r, limits)?;
            Ok((free, Stencil::new(rule, &window, &targets.elements)?))
        })
        .collect::<Result<_>>()?;
    let cases = instances(witnesses, &window, s, group, limits)?;
    if cases.iter().flatten().any(|&x| x >= s) {
        return Err(Error::AlphabetMismatch(s + 1, s));
    }
    let mut needed = 0;
    let mut failure = None;
    'cases: for e in &cases {
        let here = levels[0].1.eval(e, 0);
        for t in (0..s).filter(|&t| t != here) {
            match correction_radius(e, t, &levels, s, limits)? {
                Some(n) => needed = needed.max(n),
                None => {
                    failure = Some(Certificate::Uncorrectable {
                        e: window.pattern(e),
                        state: t,
                        radius: n_max,
                    });
                    break 'cases;
                }
            }
        }
    }
    let probe = match failure {
        None => Verdict::yes(
            Certificate::Correction {
                radius: needed,
                instances: cases.len(),
            },
            format!("every tested change corrected within D_{needed}"),
        ),
        Some(c) => {
            let mut v = Verdict::unknown(n_max, format!("a change has no correction within D_{n_max}"));
            v.certificate = Some(c);
            v
        }
    }
    .with_bound(n_max);
    if group != Group::integers() {
        return Ok(probe);
    }
    let exact = decide_postsurjective_1d(rule, limits)?;
    Ok(match (probe.status, exact.status) {
        (Status::Unknown, Status::No) => Verdict {
            status: Status::No,
            basis: format!("{}; exact procedure on Z confirms", probe.basis),
            ..probe
        },
        (Status::Yes, Status::Yes) => Verdict {
            basis: format!("{}; exact procedure on Z confirms", probe.basis),
            ..probe
        },
        _ => Verdict {
            basis: format!("{}; overruled by the exact procedure on Z", probe.basis),
            bound: Some(n_max),
            ..exact
        },
    })
}

fn correction_radius(
    e: &[u8],
    state: u8,
    levels: &[(usize, Stencil)],
    s: u8,
    limits: &Limits,
) -> Result<Option<usize>> {
    for (n, (free_len, stencil)) in levels.iter().enumerate() {
        limits.check_patterns("correction patches", s, *free_len)?;
        let mut target = vec![0u8; stencil.targets()];
        stencil.image_into(e, &mut target);
        target[0] = state;
        let free: Vec<usize> = (0..*free_len).collect();
        let mut q = e.to_vec();
        q[..*free_len].fill(0);
        loop {
            if stencil.matches(&q, &target) {
                return Ok(Some(n));
            }
            if !advance(&mut q, &free, s) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_corrects_within_radius_one() {
        let l = Limits::default();
        let v = post_surjectivity_probe(&LocalRule::elementary(170), &WitnessSet::default(), 3, &l).unwrap();
        assert!(v.is_yes());
        assert_eq!(
            v.certificate,
            Some(Certificate::Correction {
                radius: 1,
                instances: 1
            })
        );
    }

    #[test]
    fn xor_has_no_correction() {
        let l = Limits::default();
        let v = post_surjectivity_probe(&LocalRule::elementary(102), &WitnessSet::default(), 3, &l).unwrap();
        assert!(v.is_no());
        assert!(matches!(v.certificate, Some(Certificate::Uncorrectable { state: 1, .. })));
    }

    #[test]
    fn patched_witnesses() {
        let l = Limits::default();
        let w = WitnessSet::Patched { state: 0, radius: 1 };
        let v = post_surjectivity_probe(&LocalRule::elementary(15), &w, 2, &l).unwrap();
        assert_eq!(
            v.certificate,
            Some(Certificate::Correction {
                radius: 1,
                instances: 8
            })
        );
    }
}
