//! Finite approximations of Cayley graphs: verification, tori, random
//! permutation graphs and packings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Group, Letter};
use crate::limits::Limits;
use crate::sofic::graph::{ball_isomorphic, LabeledGraph};
use crate::verdict::{Certificate, Verdict};

/// A labeled graph together with the vertices whose balls were verified.
#[derive(Debug, Clone, PartialEq)]
pub struct SoficApproximation {
    pub group: Group,
    pub graph: LabeledGraph,
    /// Vertices whose `radius`-ball matches the Cayley ball, ascending.
    pub members: Vec<usize>,
    pub radius: usize,
    /// `1 - |U| / |V|`.
    pub measured_epsilon: f64,
}

impl SoficApproximation {
    fn measure(group: Group, graph: LabeledGraph, radius: usize, limits: &Limits) -> Result<Self> {
        let members = passing_vertices(&graph, radius, &group, limits)?;
        let measured_epsilon = if graph.vertices() == 0 {
            1.0
        } else {
            1.0 - members.len() as f64 / graph.vertices() as f64
        };
        Ok(SoficApproximation {
            group,
            graph,
            members,
            radius,
            measured_epsilon,
        })
    }
}

/// Vertices whose `r`-ball is isomorphic to the Cayley ball, ascending.
pub fn passing_vertices(graph: &LabeledGraph, r: usize, group: &Group, limits: &Limits) -> Result<Vec<usize>> {
    let checks: Vec<bool> = (0..graph.vertices())
        .into_par_iter()
        .map(|v| ball_isomorphic(graph, v, r, group, limits))
        .collect::<Result<_>>()?;
    Ok(checks
        .into_iter()
        .enumerate()
        .filter_map(|(v, ok)| ok.then_some(v))
        .collect())
}

/// Checks both clauses: every member has the right `r`-ball and
/// `|U| > (1 - epsilon)|V|`.
pub fn verify_approximation(
    graph: &LabeledGraph,
    members: &[usize],
    r: usize,
    epsilon: f64,
    group: &Group,
    limits: &Limits,
) -> Result<Verdict> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &u in &sorted {
        if !ball_isomorphic(graph, u, r, group, limits)? {
            return Ok(Verdict::no(
                Certificate::BallMismatch { vertex: u },
                format!("the {r}-ball at vertex {u} differs from the Cayley ball"),
            ));
        }
    }
    let size = Certificate::Approximation {
        passing: sorted.len(),
        vertices: graph.vertices(),
    };
    if (sorted.len() as f64) > (1.0 - epsilon) * graph.vertices() as f64 {
        Ok(Verdict::yes(size, "every member ball verified; size bound holds"))
    } else {
        Ok(Verdict::no(size, format!("|U| = {} is not above (1 - {epsilon})|V|", sorted.len())))
    }
}

/// The torus `(Z/n)^d` with the standard generators; for `d = 1` a cycle.
pub fn torus_approximation(d: usize, n: usize, r: usize, limits: &Limits) -> Result<SoficApproximation> {
    let group = Group::free_abelian(d)?;
    if n < 2 * r + 2 {
        return Err(Error::Precondition(format!("torus side {n} is below 2r + 2 = {}", 2 * r + 2)));
    }
    let size = n
        .checked_pow(d as u32)
        .filter(|&v| v <= limits.elements)
        .ok_or(Error::cap("torus vertices", (n as u128).pow(d as u32), limits.elements as u128))?;
    let mut graph = LabeledGraph::new(size, d);
    for v in 0..size {
        for axis in 0..d {
            let stride = n.pow(axis as u32);
            let coord = (v / stride) % n;
            let w = v - coord * stride + ((coord + 1) % n) * stride;
            graph.add_edge(v, Letter::new(axis + 1, false), w)?;
        }
    }
    let approx = SoficApproximation::measure(group, graph, r, limits)?;
    if approx.members.len() != size {
        return Err(Error::Inconsistent("a torus vertex failed the ball check".into()));
    }
    Ok(approx)
}

/// One uniformly random permutation per generator of `F_k`, seeded.
pub fn permutation_approximation(k: usize, n: usize, r: usize, seed: u64, limits: &Limits) -> Result<SoficApproximation> {
    let group = Group::free(k)?;
    if n == 0 {
        return Err(Error::Precondition("need at least one vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    SoficApproximation::measure(group, LabeledGraph::from_permutations(&perms)?, r, limits)
}

/// Greedy maximal `W ⊆ U` with pairwise disjoint `ell`-balls, scanning `U`
/// in ascending order. Members of `U` must have correct `2 ell`-balls.
pub fn greedy_packing(
    graph: &LabeledGraph,
    members: &[usize],
    ell: usize,
    group: &Group,
    limits: &Limits,
) -> Result<Vec<usize>> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &u in &sorted {
        if !ball_isomorphic(graph, u, 2 * ell, group, limits)? {
            return Err(Error::Precondition(format!(
                "vertex {u} fails the ball check at radius {}",
                2 * ell
            )));
        }
    }
    let mut taken = vec![false; graph.vertices()];
    let mut packing = Vec::new();
    for &u in &sorted {
        let ball = graph.ball(u, ell);
        if ball.iter().all(|&w| !taken[w]) {
            ball.iter().for_each(|&w| taken[w] = true);
            packing.push(u);
        }
    }
    if 2 * sorted.len() >= graph.vertices() {
        let disk = group
            .disk_size(2 * ell)
            .ok_or(Error::cap("disk size", u128::MAX, u128::MAX))?;
        if (packing.len() as u128) * disk < sorted.len() as u128 {
            return Err(Error::Inconsistent("packing below the covering bound".into()));
        }
    }
    Ok(packing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn tori_verify() {
        let a = torus_approximation(1, 8, 3, &l()).unwrap();
        assert_eq!(a.members.len(), 8);
        assert!(verify_approximation(&a.graph, &a.members, 3, 0.01, &a.group, &l()).unwrap().is_yes());
        let b = torus_approximation(2, 6, 2, &l()).unwrap();
        assert_eq!(b.graph.vertices(), 36);
        assert!(matches!(torus_approximation(1, 7, 3, &l()), Err(Error::Precondition(_))));
    }

    #[test]
    fn commuting_torus_is_not_a_free_group_ball() {
        let t = torus_approximation(2, 6, 2, &l()).unwrap();
        let f2 = Group::Free(2);
        assert!(ball_isomorphic(&t.graph, 0, 1, &f2, &l()).unwrap());
        assert!(!ball_isomorphic(&t.graph, 0, 2, &f2, &l()).unwrap());
    }

    #[test]
    fn verification_failures() {
        let z = Group::integers();
        let c3 = LabeledGraph::from_permutations(&[vec![1, 2, 0]]).unwrap();
        let v = verify_approximation(&c3, &[0, 1, 2], 2, 0.5, &z, &l()).unwrap();
        assert_eq!(v.certificate, Some(Certificate::BallMismatch { vertex: 0 }));
        let v = verify_approximation(&c3, &[], 1, 1.0, &z, &l()).unwrap();
        assert!(v.is_no());
    }

    #[test]
    fn permutation_graphs() {
        let a = permutation_approximation(2, 200, 0, 7, &l()).unwrap();
        assert_eq!(a.members.len(), 200);
        assert_eq!(a.measured_epsilon, 0.0);
        let b = permutation_approximation(2, 1, 1, 7, &l()).unwrap();
        assert!(b.members.is_empty());
        let c = permutation_approximation(2, 200, 1, 7, &l()).unwrap();
        assert_eq!(c, permutation_approximation(2, 200, 1, 7, &l()).unwrap());
        assert!(verify_approximation(&c.graph, &c.members, 1, 1.0, &c.group, &l()).unwrap().is_yes() || c.members.is_empty());
    }

    #[test]
    fn packing_on_a_cycle() {
        let a = torus_approximation(1, 12, 1, &l()).unwrap();
        let z = Group::integers();
        assert_eq!(greedy_packing(&a.graph, &a.members, 1, &z, &l()).unwrap(), vec![0, 3, 6, 9]);
        assert_eq!(greedy_packing(&a.graph, &a.members, 0, &z, &l()).unwrap(), a.members);
        assert!(greedy_packing(&a.graph, &[], 1, &z, &l()).unwrap().is_empty());
        let c3 = LabeledGraph::from_permutations(&[vec![1, 2, 0]]).unwrap();
        assert!(matches!(greedy_packing(&c3, &[0], 1, &z, &l()), Err(Error::Precondition(_))));
    }
}
