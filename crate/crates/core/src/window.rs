//! Index-based evaluation of a local rule over a finite window.
//!
//! Searches enumerate assignments of a window as flat `&[u8]` slices; a
//! [`Stencil`] precomputes, for each target cell, the window positions of its
//! neighbors so evaluation needs no group arithmetic.

use std::collections::HashMap;

use crate::ca::{LocalRule, Pattern};
use crate::error::{Error, Result};
use crate::group::{mul_unchecked, GroupElement};

#[derive(Debug, Clone)]
pub struct Window {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl Window {
    pub fn new(elements: Vec<GroupElement>) -> Window {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Window { elements, index }
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

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn positions(&self, gs: &[GroupElement]) -> Result<Vec<usize>> {
        gs.iter()
            .map(|g| {
                self.position(g)
                    .ok_or_else(|| Error::SupportViolation(g.to_string()))
            })
            .collect()
    }

    pub fn pattern(&self, cells: &[u8]) -> Pattern {
        Pattern::on(&self.elements, cells)
    }

    /// Cells of `p` in window order; every window element must be in `p`.
    pub fn cells(&self, p: &Pattern) -> Result<Vec<u8>> {
        self.elements
            .iter()
            .map(|g| p.get(g).ok_or_else(|| Error::SupportViolation(g.to_string())))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Stencil {
    arity: usize,
    s: usize,
    table: Vec<u8>,
    wires: Vec<usize>,
}

impl Stencil {
    pub fn new(rule: &LocalRule, window: &Window, targets: &[GroupElement]) -> Result<Stencil> {
        let arity = rule.neighborhood().len();
        let mut wires = Vec::with_capacity(targets.len() * arity);
        for g in targets {
            for n in rule.neighborhood().elements() {
                let gn = mul_unchecked(g, n);
                let pos = window.position(&gn).ok_or_else(|| {
                    Error::SupportViolation(format!("{gn} (neighbor of target {g})"))
                })?;
                wires.push(pos);
            }
        }
        Ok(Stencil {
            arity,
            s: rule.states() as usize,
            table: rule.table().to_vec(),
            wires,
        })
    }

    pub fn targets(&self) -> usize {
        self.wires.len() / self.arity
    }

    #[inline]
    pub fn eval(&self, cells: &[u8], target: usize) -> u8 {
        let wires = &self.wires[target * self.arity..(target + 1) * self.arity];
        let idx = wires.iter().fold(0usize, |acc, &w| acc * self.s + cells[w] as usize);
        self.table[idx]
    }

    pub fn image_into(&self, cells: &[u8], out: &mut [u8]) {
        for (t, slot) in out.iter_mut().enumerate() {
            *slot = self.eval(cells, t);
        }
    }

    /// The image as a base-`s` number, first target most significant.
    pub fn image_index(&self, cells: &[u8]) -> usize {
        (0..self.targets()).fold(0usize, |acc, t| acc * self.s + self.eval(cells, t) as usize)
    }

    /// True when the image equals `expected` (stops at the first mismatch).
    pub fn matches(&self, cells: &[u8], expected: &[u8]) -> bool {
        expected
            .iter()
            .enumerate()
            .all(|(t, &v)| self.eval(cells, t) == v)
    }
}

/// Advances `cells` at the positions `free` to the next assignment in
/// lexicographic order (first position most significant). Returns `false`
/// after the last assignment, leaving those cells at 0.
pub fn advance(cells: &mut [u8], free: &[usize], s: u8) -> bool {
    for &p in free.iter().rev() {
        if cells[p] + 1 < s {
            cells[p] += 1;
            return true;
        }
        cells[p] = 0;
    }
    false
}

/// Base-`s` index of a value sequence, first value most significant.
pub fn index_of(values: &[u8], s: u8) -> usize {
    values.iter().fold(0usize, |acc, &x| acc * s as usize + x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn advance_is_lexicographic() {
        let mut cells = vec![9, 0, 9, 0];
        let free = [1, 3];
        let mut seen = vec![(cells[1], cells[3])];
        while advance(&mut cells, &free, 2) {
            seen.push((cells[1], cells[3]));
        }
        assert_eq!(seen, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(cells, vec![9, 0, 9, 0]);
    }

    #[test]
    fn stencil_matches_apply_pattern() {
        let z = Group::integers();
        let rule = LocalRule::elementary(110);
        let window = Window::new((-3..=3).map(|i| z.int(i)).collect());
        let targets: Vec<_> = (-2..=2).map(|i| z.int(i)).collect();
        let stencil = Stencil::new(&rule, &window, &targets).unwrap();
        let cells = [1, 0, 1, 1, 0, 0, 1];
        let p = window.pattern(&cells);
        let q = crate::ca::apply_pattern(&rule, &p, &targets).unwrap();
        let mut out = vec![0; 5];
        stencil.image_into(&cells, &mut out);
        let expected: Vec<u8> = targets.iter().map(|g| q.get(g).unwrap()).collect();
        assert_eq!(out, expected);
        assert!(Stencil::new(&rule, &window, &[z.int(3)]).is_err());
    }
}
