//! Search for mutually erasable patterns.

use std::collections::HashMap;

use crate::ca::{LocalRule, Pattern};
use crate::error::Result;
use crate::group::Group;
use crate::limits::Limits;
use crate::symbolic::decide_preinjective;
use crate::verdict::{Certificate, Verdict};
use crate::window::{advance, Stencil, Window};

/// Looks for two patterns on `D_{m+2R}` that differ only inside `D_m` and
/// have the same image on `D_{m+R}`, for `m = 0..=m_max`.
///
/// Such a pair is mutually erasable, since the cells outside `D_{m+R}` never
/// see `D_m`. Contexts (the cells outside `D_m`) are scanned in
/// lexicographic order and, within a context, cores too; the first
/// collision is returned. Without a pair the answer is Unknown, except on
/// `Z` where the exact procedure decides.
pub fn find_mutually_erasable(rule: &LocalRule, m_max: usize, limits: &Limits) -> Result<Verdict> {
    let group = rule.group();
    let s = rule.states();
    let r = rule.radius();
    for m in 0..=m_max {
        let outer = group.disk(m + 2 * r, limits)?;
        limits.check_patterns("erasability candidates", s, outer.len())?;
        let core = group.disk(m, limits)?.len();
        let targets = group.disk(m + r, limits)?;
        let window = Window::new(outer.elements.clone());
        let stencil = Stencil::new(rule, &window, &targets.elements)?;
        let core_cells: Vec<usize> = (0..core).collect();
        let context_cells: Vec<usize> = (core..outer.len()).collect();
        let mut q = vec![0u8; outer.len()];
        let mut seen: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
        let mut image = vec![0u8; targets.len()];
        loop {
            seen.clear();
            q[..core].fill(0);
            loop {
                stencil.image_into(&q, &mut image);
                if let Some(first_core) = seen.get(&image) {
                    let mut first = q.clone();
                    first[..core].copy_from_slice(first_core);
                    return Ok(Verdict::yes(
                        Certificate::ErasablePatterns {
                            m,
                            first: window.pattern(&first),
                            second: window.pattern(&q),
                        },
                        "bounded search: equal images on the affected disk",
                    )
                    .with_bound(m));
                }
                seen.insert(image.clone(), q[..core].to_vec());
                if !advance(&mut q, &core_cells, s) {
                    break;
                }
            }
            if !advance(&mut q, &context_cells, s) {
                break;
            }
        }
    }
    if group == Group::integers() {
        let exact = decide_preinjective(rule, limits)?;
        let mut v = exact.clone();
        v.status = match exact.status {
            crate::verdict::Status::Yes => crate::verdict::Status::No,
            _ => crate::verdict::Status::Yes,
        };
        v.basis = format!("none up to m = {m_max}; upgraded by the exact procedure on Z");
        return Ok(v.with_bound(m_max));
    }
    Ok(Verdict::unknown(m_max, "no erasable pair within the bound"))
}

/// Re-checks an erasable pair: same support, equal outside `D_m`, different
/// inside, equal images on `D_{m+R}`.
pub fn check_erasable_patterns(
    rule: &LocalRule,
    m: usize,
    first: &Pattern,
    second: &Pattern,
    limits: &Limits,
) -> Result<bool> {
    let group = rule.group();
    let r = rule.radius();
    let outer = group.disk(m + 2 * r, limits)?;
    let core = group.disk(m, limits)?;
    let window = Window::new(outer.elements.clone());
    let (a, b) = (window.cells(first)?, window.cells(second)?);
    if a[core.len()..] != b[core.len()..] || a[..core.len()] == b[..core.len()] {
        return Ok(false);
    }
    let targets = group.disk(m + r, limits)?;
    let stencil = Stencil::new(rule, &window, &targets.elements)?;
    let (mut x, mut y) = (vec![0; targets.len()], vec![0; targets.len()]);
    stencil.image_into(&a, &mut x);
    stencil.image_into(&b, &mut y);
    Ok(x == y)
}
