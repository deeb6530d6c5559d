//! One-dimensional shifts of finite type given by forbidden words.
//!
//! The language of the shift consists of the words that occur in some
//! bi-infinite admissible sequence. With memory `K = max(L - 1, 1)`, where
//! `L` is the longest forbidden word, those are exactly the walks in the
//! essential part of the graph on admissible `K`-blocks.

use std::collections::HashSet;

use crate::ca::decode;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    states: u8,
    forbidden: Vec<Vec<u8>>,
}

impl Sft {
    pub fn new(states: u8, forbidden: Vec<Vec<u8>>) -> Result<Sft> {
        if states < 2 {
            return Err(Error::InvalidInput("an alphabet needs at least 2 states".into()));
        }
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidInput("forbidden words must be nonempty".into()));
            }
            if let Some(&x) = w.iter().find(|&&x| x >= states) {
                return Err(Error::AlphabetMismatch(x + 1, states));
            }
        }
        Ok(Sft { states, forbidden })
    }

    /// The full shift on `states` symbols.
    pub fn full(states: u8) -> Result<Sft> {
        Sft::new(states, Vec::new())
    }

    /// Parses forbidden words written as digit strings, e.g. `["11"]`.
    pub fn from_strings(states: u8, forbidden: &[&str]) -> Result<Sft> {
        let words = forbidden
            .iter()
            .map(|w| {
                crate::verdict::parse_word(w)
                    .ok_or_else(|| Error::Parse(format!("bad forbidden word {w:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Sft::new(states, words)
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn forbidden(&self) -> &[Vec<u8>] {
        &self.forbidden
    }

    /// Block length of the presentation graph.
    pub fn memory(&self) -> usize {
        let longest = self.forbidden.iter().map(Vec::len).max().unwrap_or(0);
        longest.saturating_sub(1).max(1)
    }

    /// True when no forbidden word occurs in `word`.
    pub fn admissible(&self, word: &[u8]) -> bool {
        self.forbidden
            .iter()
            .all(|f| f.len() > word.len() || !word.windows(f.len()).any(|w| w == f.as_slice()))
    }

    fn graph(&self, limits: &Limits) -> Result<BlockGraph> {
        let k = self.memory();
        let s = self.states;
        let total = limits.check_patterns("shift blocks", s, k + 1)? as usize;
        let nodes = total / s as usize;
        let mut alive: Vec<bool> = (0..nodes)
            .map(|v| {
                let mut w = vec![0; k];
                decode(v, s, &mut w);
                self.admissible(&w)
            })
            .collect();
        let mut edge = vec![false; total];
        let mut w = vec![0; k + 1];
        for (e, slot) in edge.iter_mut().enumerate() {
            decode(e, s, &mut w);
            *slot = self.admissible(&w);
        }
        // prune blocks that cannot be extended in both directions
        loop {
            let mut changed = false;
            for v in 0..nodes {
                if !alive[v] {
                    continue;
                }
                let out = (0..s as usize).any(|a| {
                    let e = v * s as usize + a;
                    edge[e] && alive[e % nodes]
                });
                let inc = (0..s as usize).any(|a| {
                    let e = a * nodes + v;
                    edge[e] && alive[e / s as usize]
                });
                if !out || !inc {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(BlockGraph {
            s: s as usize,
            k,
            nodes,
            alive,
            edge,
        })
    }
}

struct BlockGraph {
    s: usize,
    k: usize,
    nodes: usize,
    alive: Vec<bool>,
    edge: Vec<bool>,
}

impl BlockGraph {
    fn successors(&self, v: usize) -> impl Iterator<Item = (u8, usize)> + '_ {
        (0..self.s).filter_map(move |a| {
            let e = v * self.s + a;
            let t = e % self.nodes;
            (self.edge[e] && self.alive[t]).then_some((a as u8, t))
        })
    }

    fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    fn block(&self, v: usize) -> Vec<u8> {
        let mut w = vec![0; self.k];
        decode(v, self.s as u8, &mut w);
        w
    }

    fn short_words(&self, n: usize) -> HashSet<Vec<u8>> {
        (0..self.nodes)
            .filter(|&v| self.alive[v])
            .flat_map(|v| {
                let b = self.block(v);
                (0..=self.k - n).map(move |i| b[i..i + n].to_vec()).collect::<Vec<_>>()
            })
            .collect()
    }

    fn contains(&self, word: &[u8]) -> bool {
        if word.len() < self.k {
            return self.short_words(word.len()).contains(word);
        }
        let node = |w: &[u8]| crate::window::index_of(w, self.s as u8);
        let mut v = node(&word[..self.k]);
        if !self.alive[v] {
            return false;
        }
        for &a in &word[self.k..] {
            match self.successors(v).find(|&(b, _)| b == a) {
                Some((_, t)) => v = t,
                None => return false,
            }
        }
        true
    }
}

/// Number of words of length `n` in the language of the shift.
pub fn sft_language_count(sft: &Sft, n: usize, limits: &Limits) -> Result<u128> {
    let g = sft.graph(limits)?;
    if n < g.k {
        return Ok(g.short_words(n).len() as u128);
    }
    let mut counts: Vec<u128> = g.alive.iter().map(|&a| a as u128).collect();
    for _ in g.k..n {
        let mut next = vec![0u128; g.nodes];
        for v in (0..g.nodes).filter(|&v| g.alive[v]) {
            for (_, t) in g.successors(v) {
                next[t] = next[t]
                    .checked_add(counts[v])
                    .ok_or(Error::cap("language count", u128::MAX, u128::MAX))?;
            }
        }
        counts = next;
    }
    counts
        .iter()
        .try_fold(0u128, |acc, &c| acc.checked_add(c))
        .ok_or(Error::cap("language count", u128::MAX, u128::MAX))
}

/// The words of length `n` in the language, in lexicographic order.
pub fn sft_enumerate(sft: &Sft, n: usize, limits: &Limits) -> Result<Vec<Vec<u8>>> {
    let count = sft_language_count(sft, n, limits)?;
    if count > limits.patterns {
        return Err(Error::cap("language enumeration", count, limits.patterns));
    }
    let g = sft.graph(limits)?;
    let mut out: Vec<Vec<u8>> = if n < g.k {
        g.short_words(n).into_iter().collect()
    } else {
        let mut words = Vec::new();
        for v in (0..g.nodes).filter(|&v| g.alive[v]) {
            extend(&g, g.block(v), v, n, &mut words);
        }
        words
    };
    out.sort();
    Ok(out)
}

fn extend(g: &BlockGraph, word: Vec<u8>, v: usize, n: usize, out: &mut Vec<Vec<u8>>) {
    if word.len() == n {
        out.push(word);
        return;
    }
    for (a, t) in g.successors(v) {
        let mut w = word.clone();
        w.push(a);
        extend(g, w, t, n, out);
    }
}

/// Smallest `r` in `1..=r_max` such that any two words `u`, `v` of the
/// language with length at most the memory can be joined as `u w v` in the
/// language with `|w| = r`; `None` if there is none up to `r_max`.
pub fn strong_irreducibility_constant(sft: &Sft, r_max: usize, limits: &Limits) -> Result<Option<usize>> {
    let g = sft.graph(limits)?;
    if g.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let mut words: Vec<Vec<u8>> = (1..=g.k).flat_map(|n| g.short_words(n)).collect();
    words.sort();
    for r in 1..=r_max {
        let bridges = limits.check_patterns("bridge words", sft.states, r)? as usize;
        let mut w = vec![0u8; r];
        let joins = |u: &[u8], v: &[u8], w: &mut Vec<u8>| {
            (0..bridges).any(|i| {
                decode(i, sft.states, w);
                g.contains(&[u, w.as_slice(), v].concat())
            })
        };
        if words.iter().all(|u| words.iter().all(|v| joins(u, v, &mut w))) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Sft {
        Sft::from_strings(2, &["11"]).unwrap()
    }

    #[test]
    fn golden_mean_counts_are_fibonacci() {
        let l = Limits::default();
        assert_eq!(sft_language_count(&golden(), 1, &l).unwrap(), 2);
        assert_eq!(sft_language_count(&golden(), 4, &l).unwrap(), 8);
        let c: Vec<u128> = (1..=15)
            .map(|n| sft_language_count(&golden(), n, &l).unwrap())
            .collect();
        for n in 2..c.len() {
            assert_eq!(c[n], c[n - 1] + c[n - 2]);
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let l = Limits::default();
        let sft = Sft::from_strings(2, &["11", "000"]).unwrap();
        for n in 1..=8 {
            let words = sft_enumerate(&sft, n, &l).unwrap();
            assert_eq!(words.len() as u128, sft_language_count(&sft, n, &l).unwrap());
            for w in &words {
                assert!(sft.admissible(w));
            }
        }
    }

    #[test]
    fn full_shift_counts() {
        let l = Limits::default();
        let full = Sft::full(3).unwrap();
        assert_eq!(sft_language_count(&full, 5, &l).unwrap(), 243);
        assert_eq!(strong_irreducibility_constant(&full, 3, &l).unwrap(), Some(1));
    }

    #[test]
    fn strong_irreducibility() {
        let l = Limits::default();
        assert_eq!(strong_irreducibility_constant(&golden(), 3, &l).unwrap(), Some(1));
        let split = Sft::from_strings(2, &["01", "10"]).unwrap();
        assert_eq!(strong_irreducibility_constant(&split, 4, &l).unwrap(), None);
        let empty = Sft::from_strings(2, &["0", "1"]).unwrap();
        assert_eq!(
            strong_irreducibility_constant(&empty, 2, &l),
            Err(Error::EmptyLanguage)
        );
    }

    #[test]
    fn language_excludes_dead_ends() {
        let l = Limits::default();
        // "1" may only be followed by "1" and "11" is forbidden
        let sft = Sft::from_strings(2, &["10", "11"]).unwrap();
        assert_eq!(sft_enumerate(&sft, 3, &l).unwrap(), vec![vec![0, 0, 0]]);
    }
}
