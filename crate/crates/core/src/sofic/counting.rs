//! Running a local rule on a finite approximation, and the counting bound
//! that makes post-surjective rules pre-injective.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ca::{decode, LocalRule};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;
use crate::sofic::graph::{ball_isomorphic, LabeledGraph};

/// For every member `u`, the vertices reached from `u` along each neighbor.
fn wiring(graph: &LabeledGraph, members: &[usize], rule: &LocalRule, limits: &Limits) -> Result<Vec<usize>> {
    let group: Group = rule.group();
    let r = rule.radius();
    let mut wires = Vec::with_capacity(members.len() * rule.neighborhood().len());
    for &u in members {
        if !ball_isomorphic(graph, u, r, &group, limits)? {
            return Err(Error::Precondition(format!("vertex {u} fails the ball check at radius {r}")));
        }
        for n in rule.neighborhood().elements() {
            wires.push(graph.walk(u, n).expect("ball check guarantees the path"));
        }
    }
    Ok(wires)
}

fn image_index(rule: &LocalRule, wires: &[usize], p: &[u8], tuple: &mut [u8]) -> usize {
    let s = rule.states() as usize;
    wires.chunks(tuple.len()).fold(0usize, |acc, w| {
        for (slot, &v) in tuple.iter_mut().zip(w) {
            *slot = p[v];
        }
        acc * s + rule.eval(tuple) as usize
    })
}

/// `|φ(S^V)|` where `φ(p)` is the image of `p` on the members, by
/// enumerating all of `S^V`.
pub fn phi_image_count(graph: &LabeledGraph, members: &[usize], rule: &LocalRule, limits: &Limits) -> Result<u128> {
    let s = rule.states();
    let total = limits.check_patterns("graph configurations", s, graph.vertices())? as usize;
    let bins = limits.check_patterns("member patterns", s, members.len())? as usize;
    let wires = wiring(graph, members, rule, limits)?;
    let arity = rule.neighborhood().len();
    let seen: Vec<AtomicU64> = (0..bins.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let chunk = 1 << 12;
    (0..total.div_ceil(chunk)).into_par_iter().for_each(|c| {
        let mut p = vec![0u8; graph.vertices()];
        let mut tuple = vec![0u8; arity];
        for idx in c * chunk..((c + 1) * chunk).min(total) {
            decode(idx, s, &mut p);
            let i = image_index(rule, &wires, &p, &mut tuple);
            seen[i / 64].fetch_or(1 << (i % 64), Ordering::Relaxed);
        }
    });
    Ok(seen.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u128).sum())
}

/// Sampling variant for graphs too large to enumerate: the number of
/// distinct images among `samples` seeded uniform configurations. This is
/// only a lower bound on `|φ(S^V)|`.
pub fn phi_image_sample(
    graph: &LabeledGraph,
    members: &[usize],
    rule: &LocalRule,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<usize> {
    let s = rule.states();
    let wires = wiring(graph, members, rule, limits)?;
    let arity = rule.neighborhood().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut p = vec![0u8; graph.vertices()];
    let mut tuple = vec![0u8; arity];
    for _ in 0..samples {
        p.iter_mut().for_each(|x| *x = rng.gen_range(0..s));
        let image: Vec<u8> = wires
            .chunks(arity)
            .map(|w| {
                for (slot, &v) in tuple.iter_mut().zip(w) {
                    *slot = p[v];
                }
                rule.eval(&tuple)
            })
            .collect();
        seen.insert(image);
    }
    Ok(seen.len())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    /// `s^ε (1 - s^{-|D_r|})^{1/(2|D_{2r}|)} < 1`.
    pub feasible: bool,
    /// Natural log of the left-hand side.
    pub log_margin: f64,
}

/// Evaluates the inequality in log space:
/// `ε ln s + ln(1 - s^{-|D_r|}) / (2 |D_{2r}|) < 0`.
pub fn counting_feasibility(s: u32, disk_r: u64, disk_2r: u64, epsilon: f64) -> Result<Feasibility> {
    if s < 2 || disk_r == 0 || disk_2r == 0 || epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidInput(
            "need s >= 2, positive disk sizes and epsilon > 0".into(),
        ));
    }
    let ln_s = (s as f64).ln();
    let log_margin = epsilon * ln_s + (-(-(disk_r as f64) * ln_s).exp()).ln_1p() / (2.0 * disk_2r as f64);
    Ok(Feasibility {
        feasible: log_margin < 0.0,
        log_margin,
    })
}

/// Natural log of `(s^{|D_r|} - 1)^{|W|} · s^{|V| - |W||D_r|}`, the bound on
/// the image size when `W` packs disjoint balls of size `|D_r|`.
pub fn chain_bound_log(s: u32, disk_r: u64, packing: u64, vertices: u64) -> f64 {
    let ln_s = (s as f64).ln();
    let per_ball = (disk_r as f64) * ln_s + (-(-(disk_r as f64) * ln_s).exp()).ln_1p();
    packing as f64 * per_ball + (vertices as f64 - (packing * disk_r) as f64) * ln_s
}
