//! Pasting an admissible pattern into a periodic point of a shift of finite
//! type, bridging both seams with the shortest possible words.

use crate::ca::decode;
use crate::error::{Error, Result};
use crate::symbolic::Sft;
use crate::verdict::word_string;

/// A finite window of the pasted configuration `c'`. Outside the window
/// `c'` continues `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastedWindow {
    /// Position of `cells[0]`.
    pub start: i64,
    pub cells: Vec<u8>,
    /// Length of each bridge word between `c` and the pattern.
    pub bridge: usize,
    /// Positions where `c'` differs from `c`.
    pub changed: Vec<i64>,
}

impl PastedWindow {
    pub fn text(&self) -> String {
        word_string(&self.cells)
    }
}

/// Builds `c'` equal to the periodic point `c` far away and to `pattern` on
/// `[at, at + |pattern|)`, trying bridges of length `0, 1, ..` up to
/// `max_bridge`. The window keeps a margin of `c` on both sides wide enough
/// that every forbidden word meeting the window lies inside it.
pub fn cut_and_paste_demo(sft: &Sft, period: &[u8], pattern: &[u8], at: i64, max_bridge: usize) -> Result<PastedWindow> {
    let s = sft.states();
    if period.is_empty() || pattern.is_empty() {
        return Err(Error::InvalidInput("period and pattern must be nonempty".into()));
    }
    if period.iter().chain(pattern).any(|&x| x >= s) {
        return Err(Error::AlphabetMismatch(s + 1, s));
    }
    let longest = sft.forbidden().iter().map(Vec::len).max().unwrap_or(1);
    let periodic: Vec<u8> = period.iter().copied().cycle().take(period.len() + 2 * longest).collect();
    if !sft.admissible(&periodic) {
        return Err(Error::InvalidInput(format!(
            "the periodic point {} is not admissible",
            word_string(period)
        )));
    }
    if !sft.admissible(pattern) {
        return Err(Error::InvalidInput(format!(
            "the pattern {} is not admissible",
            word_string(pattern)
        )));
    }
    let c = |i: i64| period[i.rem_euclid(period.len() as i64) as usize];
    let margin = longest as i64;
    for m in 0..=max_bridge {
        let start = at - m as i64 - margin;
        let end = at + pattern.len() as i64 + m as i64 + margin;
        let bridges = (s as usize).pow(2 * m as u32);
        let mut both = vec![0u8; 2 * m];
        for idx in 0..bridges {
            decode(idx, s, &mut both);
            let (left, right) = both.split_at(m);
            let cells: Vec<u8> = (start..at - m as i64)
                .map(c)
                .chain(left.iter().copied())
                .chain(pattern.iter().copied())
                .chain(right.iter().copied())
                .chain((at + (pattern.len() + m) as i64..end).map(c))
                .collect();
            if sft.admissible(&cells) {
                let changed = (start..end)
                    .zip(&cells)
                    .filter(|&(i, &x)| c(i) != x)
                    .map(|(i, _)| i)
                    .collect();
                return Ok(PastedWindow {
                    start,
                    cells,
                    bridge: m,
                    changed,
                });
            }
        }
    }
    Err(Error::Precondition(format!("no bridge of length at most {max_bridge}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::golden_mean;

    #[test]
    fn golden_mean_paste() {
        let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[0, 0], 0, 3).unwrap();
        assert!(golden_mean().admissible(&w.cells));
        let at = (0 - w.start) as usize;
        assert_eq!(&w.cells[at..at + 2], &[0, 0]);
        // a pattern `11` can't be pasted at all
        assert!(cut_and_paste_demo(&golden_mean(), &[0, 1], &[1, 1], 0, 3).is_err());
    }

    #[test]
    fn pasting_the_same_values_changes_nothing() {
        let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[0, 1, 0], 4, 3).unwrap();
        assert!(w.changed.is_empty());
        assert_eq!(w.bridge, 0);
    }

    #[test]
    fn full_shift_overwrites() {
        let full = Sft::full(2).unwrap();
        let w = cut_and_paste_demo(&full, &[0], &[1, 1, 1], 0, 2).unwrap();
        assert_eq!(w.bridge, 0);
        assert_eq!(w.changed, vec![0, 1, 2]);
    }

    #[test]
    fn bridge_needed_when_pattern_meets_a_one() {
        // c = ..0101.., pasting `1` at an odd-adjacent spot needs a bridge
        let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[1], 0, 3).unwrap();
        assert!(golden_mean().admissible(&w.cells));
        assert_eq!(w.bridge, 1);
    }
}
