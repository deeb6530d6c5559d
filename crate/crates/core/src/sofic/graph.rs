//! Deterministic, symmetric labeled graphs and rooted ball comparison.
//!
//! Text format: the vertex count on the first line, then one `v label w`
//! triple per line. Labels are generator letters; the inverse edge
//! `w label^-1 v` is added automatically.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, Letter};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    rank: usize,
    /// `edges[v][slot]`, slot `2(i-1)` for generator `i` and `2(i-1)+1` for its inverse.
    edges: Vec<Vec<Option<usize>>>,
}

fn slot(x: Letter) -> usize {
    2 * (x.index() - 1) + usize::from(x.is_inverse())
}

impl LabeledGraph {
    /// A graph with no edges over `rank` generators.
    pub fn new(vertices: usize, rank: usize) -> LabeledGraph {
        LabeledGraph {
            rank,
            edges: vec![vec![None; 2 * rank]; vertices],
        }
    }

    pub fn vertices(&self) -> usize {
        self.edges.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn target(&self, v: usize, x: Letter) -> Option<usize> {
        self.edges.get(v)?.get(slot(x)).copied().flatten()
    }

    /// Adds `v -x-> w` and `w -x^-1-> v`, rejecting anything that would make
    /// the labeling nondeterministic.
    pub fn add_edge(&mut self, v: usize, x: Letter, w: usize) -> Result<()> {
        let n = self.vertices();
        if v >= n || w >= n {
            return Err(Error::MalformedGraph(format!("edge {v} -> {w} outside {n} vertices")));
        }
        if x.index() > self.rank {
            return Err(Error::MalformedGraph(format!("label {} outside rank {}", x.to_char(), self.rank)));
        }
        for (from, label, to) in [(v, x, w), (w, x.inverse(), v)] {
            match self.edges[from][slot(label)] {
                Some(old) if old != to => {
                    return Err(Error::MalformedGraph(format!(
                        "vertex {from} has two {} edges ({old} and {to})",
                        label.to_char()
                    )))
                }
                _ => self.edges[from][slot(label)] = Some(to),
            }
        }
        Ok(())
    }

    /// Builds a graph from one permutation per generator.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<LabeledGraph> {
        let n = perms.first().map_or(0, Vec::len);
        let mut g = LabeledGraph::new(n, perms.len());
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::MalformedGraph("permutations of different sizes".into()));
            }
            for (v, &w) in p.iter().enumerate() {
                g.add_edge(v, Letter::new(i + 1, false), w)?;
            }
        }
        Ok(g)
    }

    pub fn parse(text: &str, group: &Group) -> Result<LabeledGraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, head) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = head
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {head:?}")))?;
        let mut g = LabeledGraph::new(n, group.rank());
        for (no, line) in lines {
            let err = || Error::Parse(format!("line {}: expected `v label w`", no + 1));
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [v, label, w] = parts[..] else {
                return Err(err());
            };
            let mut chars = label.chars();
            let x = match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(x), None) => x,
                _ => return Err(err()),
            };
            if x.index() > group.rank() {
                return Err(Error::GroupMismatch(format!("label {label} is not a generator of {group}")));
            }
            let v = v.parse().map_err(|_| err())?;
            let w = w.parse().map_err(|_| err())?;
            g.add_edge(v, x, w)?;
        }
        Ok(g)
    }

    /// Writes every edge once, under its generator label.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertices());
        for v in 0..self.vertices() {
            for i in 1..=self.rank {
                let x = Letter::new(i, false);
                if let Some(w) = self.target(v, x) {
                    writeln!(out, "{v} {} {w}", x.to_char()).unwrap();
                }
            }
        }
        out
    }

    /// Vertices within graph distance `r` of `v`, in BFS order.
    pub fn ball(&self, v: usize, r: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices()];
        dist[v] = 0;
        let mut order = vec![v];
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == r {
                continue;
            }
            for w in self.edges[u].iter().flatten() {
                if dist[*w] == usize::MAX {
                    dist[*w] = dist[u] + 1;
                    order.push(*w);
                    queue.push_back(*w);
                }
            }
        }
        order
    }

    /// Follows the letters of `g` from `v`.
    pub fn walk(&self, v: usize, g: &GroupElement) -> Option<usize> {
        g.letters().into_iter().try_fold(v, |u, x| self.target(u, x))
    }
}

/// Whether the rooted ball of radius `r` at `v` is isomorphic, as a labeled
/// graph, to the ball `D_r` of the Cayley graph of `group`. The ball is the
/// union of labeled paths of length at most `r` from the root, so a 0-ball
/// is a bare point.
///
/// The map `D_r -> V` is forced by the labels, so one pass over `D_r` in
/// length order builds it and checks edges both ways.
pub fn ball_isomorphic(graph: &LabeledGraph, v: usize, r: usize, group: &Group, limits: &Limits) -> Result<bool> {
    if graph.rank() != group.rank() {
        return Err(Error::MalformedGraph(format!(
            "graph has {} generators, {group} has {}",
            graph.rank(),
            group.rank()
        )));
    }
    if v >= graph.vertices() {
        return Err(Error::InvalidInput(format!("vertex {v} outside the graph")));
    }
    let disk = group.disk(r, limits)?;
    let mut image: Vec<Option<usize>> = vec![None; disk.len()];
    image[0] = Some(v);
    let letters = group.letters();
    for (i, g) in disk.elements.iter().enumerate() {
        let here = image[i].expect("disk elements are reached in length order");
        for &x in &letters {
            let Some(j) = disk.position(&g.mul_letter(x)) else {
                continue;
            };
            match (graph.target(here, x), image[j]) {
                (None, _) => return Ok(false),
                (Some(w), Some(known)) if w != known => return Ok(false),
                (Some(w), _) => image[j] = Some(w),
            }
        }
    }
    let mut preimage: Vec<Option<usize>> = vec![None; graph.vertices()];
    for (i, w) in image.iter().enumerate() {
        let w = w.expect("every disk element is mapped");
        if preimage[w].replace(i).is_some() {
            return Ok(false);
        }
    }
    // no extra edge on a path of length at most r from the root
    for (g, here) in disk.elements.iter().zip(&image).filter(|(g, _)| g.length() < r) {
        for &x in &letters {
            if let Some(j) = graph.target(here.unwrap(), x).and_then(|w| preimage[w]) {
                if disk.elements[j] != g.mul_letter(x) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> LabeledGraph {
        LabeledGraph::from_permutations(&[(0..n).map(|v| (v + 1) % n).collect()]).unwrap()
    }

    #[test]
    fn cycles() {
        let z = Group::integers();
        let l = Limits::default();
        let c10 = cycle(10);
        assert!((0..10).all(|v| ball_isomorphic(&c10, v, 2, &z, &l).unwrap()));
        assert!(!ball_isomorphic(&cycle(3), 0, 2, &z, &l).unwrap());
        assert!(!ball_isomorphic(&cycle(4), 0, 2, &z, &l).unwrap());
        // the edge joining 2 and -2 lies on no path of length 2 from the root
        assert!(ball_isomorphic(&cycle(5), 0, 2, &z, &l).unwrap());
        assert!(ball_isomorphic(&cycle(6), 0, 2, &z, &l).unwrap());
    }

    #[test]
    fn single_vertex_with_loops() {
        let f2 = Group::Free(2);
        let l = Limits::default();
        let g = LabeledGraph::from_permutations(&[vec![0], vec![0]]).unwrap();
        assert!(ball_isomorphic(&g, 0, 0, &f2, &l).unwrap());
        assert!(!ball_isomorphic(&g, 0, 1, &f2, &l).unwrap());
    }

    #[test]
    fn file_round_trip_and_errors() {
        let z = Group::integers();
        let text = "3\n0 a 1\n1 a 2\n2 a 0\n";
        let g = LabeledGraph::parse(text, &z).unwrap();
        assert_eq!(g.to_text(), text);
        assert_eq!(g.target(0, Letter::new(1, true)), Some(2));
        assert!(matches!(
            LabeledGraph::parse("2\n0 a 1\n0 a 0\n", &z),
            Err(Error::MalformedGraph(_))
        ));
        assert!(matches!(LabeledGraph::parse("2\n0 b 1\n", &z), Err(Error::GroupMismatch(_))));
        assert!(matches!(LabeledGraph::parse("2\n0 a\n", &z), Err(Error::Parse(_))));
    }

    #[test]
    fn partial_graph_matches_when_the_ball_is_present() {
        // a path 0 - 1 - 2 - 3 - 4 centered at 2
        let mut g = LabeledGraph::new(5, 1);
        for v in 0..4 {
            g.add_edge(v, Letter::new(1, false), v + 1).unwrap();
        }
        let z = Group::integers();
        let l = Limits::default();
        assert!(ball_isomorphic(&g, 2, 2, &z, &l).unwrap());
        assert!(!ball_isomorphic(&g, 1, 2, &z, &l).unwrap());
    }
}
