//! Exact decision procedures for cellular automata on `Z`.
//!
//! The neighborhood is normalized to the window `{lo, .., hi}` of width
//! `w = hi - lo + 1`. Nodes of the de Bruijn graph are words of length
//! `w - 1`, edges are words of length `w` labeled by the rule output. A
//! word is encoded base `s` with its first symbol most significant, so the
//! edge `e` leaves node `e / s`, enters node `e % s^{w-1}` and appends
//! symbol `e % s`.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::ca::{decode, Alphabet, LocalRule, Neighborhood};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::limits::Limits;
use crate::probes::balance::{count_preimages, preimage_histogram};
use crate::verdict::{Certificate, LevelCount, Verdict};
use crate::ca::Pattern;

#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    states: u8,
    width: usize,
    offset: i64,
    labels: Vec<u8>,
}

impl DeBruijnGraph {
    pub fn new(rule: &LocalRule) -> Result<DeBruijnGraph> {
        if rule.group() != Group::integers() {
            return Err(Error::Unsupported(format!(
                "exact decisions need a rule on Z, got {}",
                rule.group()
            )));
        }
        let offsets: Vec<i64> = rule
            .neighborhood()
            .elements()
            .iter()
            .map(|g| match g {
                GroupElement::Vector(v) => v[0],
                GroupElement::Word(_) => unreachable!(),
            })
            .collect();
        let lo = *offsets.iter().min().expect("nonempty neighborhood");
        let hi = *offsets.iter().max().expect("nonempty neighborhood");
        let width = (hi - lo + 1) as usize;
        let s = rule.states();
        let edges = Limits::default().check_patterns("de Bruijn edges", s, width)? as usize;
        let mut word = vec![0u8; width];
        let mut tuple = vec![0u8; offsets.len()];
        let labels = (0..edges)
            .map(|e| {
                decode(e, s, &mut word);
                for (slot, &o) in tuple.iter_mut().zip(&offsets) {
                    *slot = word[(o - lo) as usize];
                }
                rule.eval(&tuple)
            })
            .collect();
        Ok(DeBruijnGraph {
            states: s,
            width,
            offset: lo,
            labels,
        })
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Position of the first window cell relative to the updated cell.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn nodes(&self) -> usize {
        self.labels.len() / self.states as usize
    }

    pub fn edges(&self) -> usize {
        self.labels.len()
    }

    fn edge(&self, node: usize, symbol: u8) -> usize {
        node * self.states as usize + symbol as usize
    }

    fn target(&self, edge: usize) -> usize {
        edge % self.nodes()
    }

    pub fn label(&self, edge: usize) -> u8 {
        self.labels[edge]
    }

    fn node_word(&self, node: usize) -> Vec<u8> {
        let mut w = vec![0u8; self.width - 1];
        decode(node, self.states, &mut w);
        w
    }

    /// The rule on the contiguous window `{offset, .., offset + w - 1}`.
    pub fn window_rule(&self) -> LocalRule {
        let n = Neighborhood::interval(self.offset, self.offset + self.width as i64 - 1);
        LocalRule::new(Alphabet::new(self.states).unwrap(), n, self.labels.clone())
            .expect("window table is total")
    }

    /// Image of a finite word: one output per full window.
    pub fn image_of_word(&self, word: &[u8]) -> Vec<u8> {
        word.windows(self.width)
            .map(|w| self.labels[crate::window::index_of(w, self.states)])
            .collect()
    }
}

type Bits = Vec<u64>;

fn bits_empty(b: &Bits) -> bool {
    b.iter().all(|&x| x == 0)
}

fn bits_members(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &x) in b.iter().enumerate() {
        let mut x = x;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(i * 64 + t);
            x &= x - 1;
        }
    }
    out
}

/// Surjectivity by subset construction: the rule is onto iff no label
/// sequence drives the full node set to the empty set. A No carries a
/// shortest orphan word; a Yes carries the reachable subset family, which
/// contains the full set, is closed under every label and never empty.
pub fn decide_surjective(rule: &LocalRule, limits: &Limits) -> Result<Verdict> {
    let g = DeBruijnGraph::new(rule)?;
    let n = g.nodes();
    let s = g.states as usize;
    let blocks = n.div_ceil(64);
    let mut full: Bits = vec![0; blocks];
    for v in 0..n {
        full[v / 64] |= 1 << (v % 64);
    }
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    let mut family: Vec<Bits> = vec![full.clone()];
    // (parent index, label) for orphan reconstruction
    let mut parent: Vec<Option<(usize, u8)>> = vec![None];
    seen.insert(full, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let members = bits_members(&family[i]);
        for b in 0..s as u8 {
            let mut next: Bits = vec![0; blocks];
            for &v in &members {
                for a in 0..s as u8 {
                    let e = g.edge(v, a);
                    if g.label(e) == b {
                        let t = g.target(e);
                        next[t / 64] |= 1 << (t % 64);
                    }
                }
            }
            if bits_empty(&next) {
                let mut word = vec![b];
                let mut at = i;
                while let Some((p, label)) = parent[at] {
                    word.push(label);
                    at = p;
                }
                word.reverse();
                return Ok(Verdict::no(
                    Certificate::Orphan { word },
                    "exact: subset construction on the de Bruijn graph",
                ));
            }
            if !seen.contains_key(&next) {
                if family.len() >= limits.subsets {
                    return Err(Error::cap(
                        "subset-construction states",
                        family.len() as u128 + 1,
                        limits.subsets as u128,
                    ));
                }
                seen.insert(next.clone(), family.len());
                family.push(next);
                parent.push(Some((i, b)));
                queue.push_back(family.len() - 1);
            }
        }
    }
    let subsets = family.iter().map(bits_members).collect();
    Ok(Verdict::yes(
        Certificate::SubsetClosure { subsets },
        "exact: subset construction on the de Bruijn graph",
    ))
}

/// Re-checks a [`Certificate::Orphan`]: following the word's symbols from
/// the full node set ends in the empty set.
pub fn check_orphan(rule: &LocalRule, word: &[u8]) -> Result<bool> {
    let g = DeBruijnGraph::new(rule)?;
    if word.iter().any(|&b| b >= g.states) {
        return Ok(false);
    }
    let mut set: Vec<bool> = vec![true; g.nodes()];
    for &b in word {
        let mut next = vec![false; g.nodes()];
        for v in (0..g.nodes()).filter(|&v| set[v]) {
            for a in 0..g.states {
                let e = g.edge(v, a);
                if g.label(e) == b {
                    next[g.target(e)] = true;
                }
            }
        }
        set = next;
    }
    Ok(!set.contains(&true))
}

/// Re-checks a [`Certificate::SubsetClosure`] against the rule.
pub fn check_subset_closure(rule: &LocalRule, subsets: &[Vec<usize>]) -> Result<bool> {
    let g = DeBruijnGraph::new(rule)?;
    let n = g.nodes();
    let mut family: Vec<Vec<usize>> = subsets.to_vec();
    for set in family.iter_mut() {
        set.sort_unstable();
        set.dedup();
    }
    if !family.iter().any(|set| set.len() == n) {
        return Ok(false);
    }
    let known: std::collections::HashSet<&Vec<usize>> = family.iter().collect();
    for set in &family {
        if set.is_empty() || set.iter().any(|&v| v >= n) {
            return Ok(false);
        }
        for b in 0..g.states {
            let mut next: Vec<usize> = set
                .iter()
                .flat_map(|&v| (0..g.states).map(move |a| (v, a)))
                .map(|(v, a)| g.edge(v, a))
                .filter(|&e| g.label(e) == b)
                .map(|e| g.target(e))
                .collect();
            next.sort_unstable();
            next.dedup();
            if !known.contains(&next) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pre-injectivity by direct search for two paths that split at a node and
/// merge again with equal labels. A No carries the mutually erasable words;
/// a Yes carries the closed set of split pairs, none of them diagonal.
///
/// The result is cross-checked against [`decide_surjective`].
pub fn decide_preinjective(rule: &LocalRule, limits: &Limits) -> Result<Verdict> {
    let direct = preinjective_search(rule)?;
    let surjective = decide_surjective(rule, limits)?;
    if direct.status != surjective.status {
        return Err(Error::Inconsistent(format!(
            "pre-injectivity search says {} but surjectivity says {}",
            direct.status, surjective.status
        )));
    }
    Ok(direct)
}

fn preinjective_search(rule: &LocalRule) -> Result<Verdict> {
    let g = DeBruijnGraph::new(rule)?;
    let n = g.nodes();
    let s = g.states;
    let pair = |u: usize, v: usize| u * n + v;
    let mut prev: HashMap<usize, (Option<usize>, u8, u8)> = HashMap::new();
    let mut origin: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for u in 0..n {
        for a in 0..s {
            for b in a + 1..s {
                let (ea, eb) = (g.edge(u, a), g.edge(u, b));
                if g.label(ea) != g.label(eb) {
                    continue;
                }
                let p = pair(g.target(ea), g.target(eb));
                if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(p) {
                    slot.insert((None, a, b));
                    origin.insert(p, u);
                    queue.push_back(p);
                }
            }
        }
    }
    while let Some(p) = queue.pop_front() {
        let (x, y) = (p / n, p % n);
        if x == y {
            let (mut first, mut second) = (Vec::new(), Vec::new());
            let mut at = p;
            loop {
                let (back, a, b) = prev[&at];
                first.push(a);
                second.push(b);
                match back {
                    Some(q) => at = q,
                    None => break,
                }
            }
            first.reverse();
            second.reverse();
            let tail = g.width - 1;
            let split = first.len() - tail;
            return Ok(Verdict::no(
                Certificate::ErasableWords {
                    left: g.node_word(origin[&at]),
                    middle: first[..split].to_vec(),
                    alternate: second[..split].to_vec(),
                    right: first[split..].to_vec(),
                },
                "exact: pair-graph search for merging paths",
            ));
        }
        for a in 0..s {
            for b in 0..s {
                let (ea, eb) = (g.edge(x, a), g.edge(y, b));
                if g.label(ea) != g.label(eb) {
                    continue;
                }
                let q = pair(g.target(ea), g.target(eb));
                if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(q) {
                    slot.insert((Some(p), a, b));
                    queue.push_back(q);
                }
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = prev.keys().map(|&p| (p / n, p % n)).collect();
    pairs.sort_unstable();
    Ok(Verdict::yes(
        Certificate::PairClosure { pairs },
        "exact: pair-graph search for merging paths",
    ))
}

/// Re-checks a [`Certificate::PairClosure`]: it holds every pair reached one
/// step after a split, is closed under equal-label steps and has no
/// diagonal pair.
pub fn check_pair_closure(rule: &LocalRule, pairs: &[(usize, usize)]) -> Result<bool> {
    let g = DeBruijnGraph::new(rule)?;
    let n = g.nodes();
    let known: std::collections::HashSet<(usize, usize)> = pairs.iter().copied().collect();
    if known.iter().any(|&(x, y)| x == y || x >= n || y >= n) {
        return Ok(false);
    }
    for u in 0..n {
        for a in 0..g.states {
            for b in a + 1..g.states {
                let (ea, eb) = (g.edge(u, a), g.edge(u, b));
                if g.label(ea) == g.label(eb) && !known.contains(&(g.target(ea), g.target(eb))) {
                    return Ok(false);
                }
            }
        }
    }
    for &(x, y) in &known {
        for a in 0..g.states {
            for b in 0..g.states {
                let (ea, eb) = (g.edge(x, a), g.edge(y, b));
                if g.label(ea) == g.label(eb) && !known.contains(&(g.target(ea), g.target(eb))) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Re-checks a [`Certificate::ErasableWords`]: equal images in every
/// context, and the two middles differ.
pub fn check_erasable_words(
    rule: &LocalRule,
    left: &[u8],
    middle: &[u8],
    alternate: &[u8],
    right: &[u8],
) -> Result<bool> {
    let g = DeBruijnGraph::new(rule)?;
    let k = g.width - 1;
    if middle.len() != alternate.len() || middle == alternate || left.len() < k || right.len() < k {
        return Ok(false);
    }
    let join = |m: &[u8]| [left, m, right].concat();
    Ok(g.image_of_word(&join(middle)) == g.image_of_word(&join(alternate)))
}

/// Reversibility, equivalently injectivity on periodic configurations.
///
/// The rule is injective iff no cycle of the pair graph passes through a
/// pair of distinct windows. A No carries two distinct periodic
/// configurations with equal images read off such a cycle; a Yes carries
/// an inverse rule whose composition with the rule is the identity in both
/// orders.
pub fn decide_reversible(rule: &LocalRule, limits: &Limits) -> Result<Verdict> {
    let g = DeBruijnGraph::new(rule)?;
    let n = g.nodes();
    let s = g.states;
    let mut graph: DiGraph<usize, (u8, u8)> = DiGraph::with_capacity(n * n, 0);
    let idx: Vec<_> = (0..n * n).map(|p| graph.add_node(p)).collect();
    for x in 0..n {
        for y in 0..n {
            for a in 0..s {
                for b in 0..s {
                    let (ea, eb) = (g.edge(x, a), g.edge(y, b));
                    if g.label(ea) == g.label(eb) {
                        let q = g.target(ea) * n + g.target(eb);
                        graph.add_edge(idx[x * n + y], idx[q], (a, b));
                    }
                }
            }
        }
    }
    let mut component = vec![usize::MAX; n * n];
    for (c, scc) in tarjan_scc(&graph).into_iter().enumerate() {
        for v in scc {
            component[graph[v]] = c;
        }
    }
    // deterministic scan for an edge inside an SCC between distinct windows
    for x in 0..n {
        for y in 0..n {
            let p = x * n + y;
            for a in 0..s {
                for b in 0..s {
                    let (ea, eb) = (g.edge(x, a), g.edge(y, b));
                    if g.label(ea) != g.label(eb) || (x == y && a == b) {
                        continue;
                    }
                    let q = g.target(ea) * n + g.target(eb);
                    if component[q] != component[p] {
                        continue;
                    }
                    let back = path_within(&g, q, p, &component);
                    let mut first = vec![a];
                    let mut second = vec![b];
                    for (c, d) in back {
                        first.push(c);
                        second.push(d);
                    }
                    return Ok(Verdict::no(
                        Certificate::PeriodicPair { first, second },
                        "exact: cycle through distinct windows in the pair graph",
                    ));
                }
            }
        }
    }
    let inverse = synthesize_inverse(&g, limits)?;
    Ok(Verdict::yes(
        Certificate::Inverse { rule: inverse },
        "exact: pair graph has no cycle through distinct windows",
    ))
}

/// Alias of [`decide_reversible`]: on `Z` the two properties coincide.
pub fn decide_injective_periodic(rule: &LocalRule, limits: &Limits) -> Result<Verdict> {
    decide_reversible(rule, limits)
}

fn path_within(g: &DeBruijnGraph, from: usize, to: usize, component: &[usize]) -> Vec<(u8, u8)> {
    let n = g.nodes();
    let comp = component[from];
    let mut prev: HashMap<usize, (usize, u8, u8)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut found = from == to;
    while !found {
        let p = queue.pop_front().expect("target lies in the same component");
        let (x, y) = (p / n, p % n);
        'scan: for a in 0..g.states {
            for b in 0..g.states {
                let (ea, eb) = (g.edge(x, a), g.edge(y, b));
                if g.label(ea) != g.label(eb) {
                    continue;
                }
                let q = g.target(ea) * n + g.target(eb);
                if component[q] != comp || q == from || prev.contains_key(&q) {
                    continue;
                }
                prev.insert(q, (p, a, b));
                if q == to {
                    found = true;
                    break 'scan;
                }
                queue.push_back(q);
            }
        }
    }
    let mut steps = Vec::new();
    let mut at = to;
    while at != from {
        let (p, a, b) = prev[&at];
        steps.push((a, b));
        at = p;
    }
    steps.reverse();
    steps
}

/// Re-checks a [`Certificate::PeriodicPair`].
pub fn check_periodic_pair(rule: &LocalRule, first: &[u8], second: &[u8]) -> Result<bool> {
    use crate::ca::{Background, PatchedConfiguration};
    if first.len() != second.len() || first.is_empty() || first == second {
        return Ok(false);
    }
    let z = Group::integers();
    let x = PatchedConfiguration::new(z, Background::Periodic(first.to_vec()), [])?;
    let y = PatchedConfiguration::new(z, Background::Periodic(second.to_vec()), [])?;
    Ok(x.apply(rule)? == y.apply(rule)?)
}

/// Finds the smallest radius `r` such that `x(0)` is a function of the
/// image on `{-r, .., r}`, and returns that function as a rule.
fn synthesize_inverse(g: &DeBruijnGraph, limits: &Limits) -> Result<LocalRule> {
    let s = g.states;
    let rule = g.window_rule();
    for r in 0usize.. {
        let lo = -(r as i64) + g.offset;
        let len = 2 * r + g.width;
        if lo > 0 || lo + (len as i64) <= 0 {
            continue;
        }
        let total = limits.check_patterns("inverse synthesis windows", s, len)? as usize;
        let centre = (-lo) as usize;
        let image_len = 2 * r + 1;
        let mut table = vec![u8::MAX; (s as usize).pow(image_len as u32)];
        let mut word = vec![0u8; len];
        let mut consistent = true;
        for idx in 0..total {
            decode(idx, s, &mut word);
            let image = g.image_of_word(&word);
            let slot = &mut table[crate::window::index_of(&image, s)];
            if *slot == u8::MAX {
                *slot = word[centre];
            } else if *slot != word[centre] {
                consistent = false;
                break;
            }
        }
        if !consistent {
            continue;
        }
        for v in table.iter_mut().filter(|v| **v == u8::MAX) {
            *v = 0;
        }
        let inverse = LocalRule::new(
            Alphabet::new(s)?,
            Neighborhood::interval(-(r as i64), r as i64),
            table,
        )?
        .canonical();
        if inverse.compose(&rule)?.is_identity() && rule.compose(&inverse)?.is_identity() {
            return Ok(inverse);
        }
        return Err(Error::Inconsistent(
            "determined inverse failed the composition check".into(),
        ));
    }
    unreachable!()
}

/// Post-surjectivity on `Z`: equivalent to reversibility, so this is
/// [`decide_reversible`] with the basis recorded.
pub fn decide_postsurjective_1d(rule: &LocalRule, limits: &Limits) -> Result<Verdict> {
    let mut v = decide_reversible(rule, limits)?;
    v.basis = format!("exact via reversibility ({})", v.basis);
    Ok(v)
}

/// Balancedness on `Z`.
///
/// Counts preimages on `D_{n+r}` of every pattern on `D_n` for `n <= n_max`.
/// A surjective rule must show exact balance at every level (anything else
/// is reported as an inconsistency); a non-surjective one yields either a
/// counting deviation or, past the counting bound, the orphan's zero count.
pub fn decide_balanced_1d(rule: &LocalRule, n_max: usize, limits: &Limits) -> Result<Verdict> {
    let surjective = decide_surjective(rule, limits)?;
    let z = Group::integers();
    let r = rule.radius();
    let s = rule.states();
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let e = z.disk(n, limits)?;
        let m = z.disk(n + r, limits)?;
        let hist = preimage_histogram(rule, &e.elements, &m.elements, limits)?;
        let expected = (s as u128).pow((m.len() - e.len()) as u32);
        if let Some(bad) = hist.iter().position(|&c| c != expected) {
            if surjective.is_yes() {
                return Err(Error::Inconsistent(format!(
                    "surjective rule unbalanced at level {n}"
                )));
            }
            let other = hist.iter().position(|&c| c != hist[bad]);
            let count_at = |i: usize| {
                let mut cells = vec![0u8; e.len()];
                decode(i, s, &mut cells);
                crate::verdict::PreimageCount {
                    pattern: Pattern::on(&e.elements, &cells),
                    window_size: m.len(),
                    count: hist[i],
                    expected,
                }
            };
            return Ok(Verdict::no(
                Certificate::Deviation {
                    first: count_at(bad),
                    second: other.map(count_at),
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
    match surjective.certificate {
        Some(Certificate::Orphan { word }) => {
            let n = word.len() / 2;
            let e = z.disk(n, limits)?;
            let m = z.disk(n + r, limits)?;
            let mut p = Pattern::uniform(&e.elements, 0);
            for (i, &x) in word.iter().enumerate() {
                p.set(z.int(i as i64 - n as i64), x);
            }
            let count = count_preimages(rule, &p, &m.elements, limits)?;
            if count.count != 0 {
                return Err(Error::Inconsistent("orphan pattern has a preimage".into()));
            }
            Ok(Verdict::no(
                Certificate::Deviation {
                    first: count,
                    second: None,
                },
                "orphan word from the subset construction",
            )
            .with_bound(n_max))
        }
        _ => Ok(Verdict::yes(
            Certificate::Balanced { levels },
            "surjective on Z (balance equivalence), counts exact at every level",
        )
        .with_bound(n_max)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn limits() -> Limits {
        Limits::default()
    }

    fn xor102() -> LocalRule {
        LocalRule::from_fn(Alphabet::binary(), Neighborhood::interval(0, 1), |x| x[0] ^ x[1]).unwrap()
    }

    #[test]
    fn rule102_profile() {
        let r = xor102();
        assert!(decide_surjective(&r, &limits()).unwrap().is_yes());
        assert!(decide_preinjective(&r, &limits()).unwrap().is_yes());
        assert!(decide_reversible(&r, &limits()).unwrap().is_no());
        assert!(decide_postsurjective_1d(&r, &limits()).unwrap().is_no());
        assert!(decide_balanced_1d(&r, 3, &limits()).unwrap().is_yes());
    }

    #[test]
    fn pair_closures_recheck() {
        for code in [15u8, 30, 90, 102, 170, 204] {
            let v = decide_preinjective(&LocalRule::elementary(code), &limits()).unwrap();
            let Some(Certificate::PairClosure { pairs }) = v.certificate else {
                panic!("rule {code} should be pre-injective");
            };
            assert!(check_pair_closure(&LocalRule::elementary(code), &pairs).unwrap());
            if !pairs.is_empty() {
                assert!(!check_pair_closure(&LocalRule::elementary(code), &pairs[1..]).unwrap());
            }
            assert!(!check_pair_closure(&LocalRule::elementary(code), &[(0, 0)]).unwrap());
        }
    }

    #[test]
    fn constant_rule_has_orphan_one() {
        let v = decide_surjective(&LocalRule::elementary(0), &limits()).unwrap();
        assert_eq!(v.certificate, Some(Certificate::Orphan { word: vec![1] }));
        assert!(check_orphan(&LocalRule::elementary(0), &[1]).unwrap());
        assert!(!check_orphan(&LocalRule::elementary(0), &[0, 0]).unwrap());
        let v = decide_preinjective(&LocalRule::elementary(0), &limits()).unwrap();
        match v.certificate {
            Some(Certificate::ErasableWords {
                middle, alternate, ..
            }) => {
                assert_eq!(middle, vec![0]);
                assert_eq!(alternate, vec![1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let v = decide_balanced_1d(&LocalRule::elementary(0), 3, &limits()).unwrap();
        assert_eq!(v.status, Status::No);
    }

    #[test]
    fn majority_on_z_is_not_preinjective() {
        let v = decide_preinjective(&LocalRule::elementary(232), &limits()).unwrap();
        assert!(v.is_no());
        if let Some(Certificate::ErasableWords {
            left,
            middle,
            alternate,
            right,
        }) = v.certificate
        {
            assert!(check_erasable_words(&LocalRule::elementary(232), &left, &middle, &alternate, &right).unwrap());
        }
    }

    #[test]
    fn shifts_and_complement_are_reversible() {
        let z = Group::integers();
        let v = decide_reversible(&LocalRule::elementary(170), &limits()).unwrap();
        let Some(Certificate::Inverse { rule: inv }) = v.certificate else {
            panic!("missing inverse")
        };
        assert_eq!(inv.neighborhood().elements(), &[z.int(-1)]);
        assert_eq!(inv.table(), &[0, 1]);

        let v = decide_reversible(&LocalRule::elementary(15), &limits()).unwrap();
        let Some(Certificate::Inverse { rule: inv }) = v.certificate else {
            panic!("missing inverse")
        };
        assert_eq!(inv.neighborhood().elements(), &[z.int(1)]);
        assert_eq!(inv.table(), &[1, 0]);
    }

    #[test]
    fn rule102_periodic_pair_checks_out() {
        let v = decide_reversible(&xor102(), &limits()).unwrap();
        let Some(Certificate::PeriodicPair { first, second }) = v.certificate else {
            panic!("missing pair")
        };
        assert!(check_periodic_pair(&xor102(), &first, &second).unwrap());
    }

    #[test]
    fn identity_rule() {
        let id = LocalRule::identity(Group::integers(), Alphabet::binary());
        assert!(decide_surjective(&id, &limits()).unwrap().is_yes());
        assert!(decide_reversible(&id, &limits()).unwrap().is_yes());
        assert!(decide_balanced_1d(&id, 3, &limits()).unwrap().is_yes());
    }

    #[test]
    fn non_z_rules_are_rejected() {
        let f2 = Group::Free(2);
        let rule = LocalRule::identity(f2, Alphabet::binary());
        assert!(matches!(
            decide_surjective(&rule, &limits()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn subset_closure_certificate() {
        let v = decide_surjective(&LocalRule::elementary(30), &limits()).unwrap();
        let Some(Certificate::SubsetClosure { subsets }) = v.certificate else {
            panic!("expected closure")
        };
        assert!(check_subset_closure(&LocalRule::elementary(30), &subsets).unwrap());
        assert!(!check_subset_closure(&LocalRule::elementary(30), &subsets[1..]).unwrap() || subsets.len() == 1);
    }
}
