//! The acceptance criteria as runnable checks with pinned runtime budgets.
//!
//! Shared by the `acceptance` test target and `cagroup suite --acceptance`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::{Alphabet, Background, LocalRule, Neighborhood, PatchedConfiguration, Pattern};
use crate::certify::check_uncorrectable;
use crate::corpus::{
    critical_preimage, golden_mean, has_mixed_children, is_critical_preimage, majority_f2, non_postsurj_witness_f2,
    xor_rule102,
};
use crate::error::Result;
use crate::group::{Group, GroupElement};
use crate::limits::Limits;
use crate::probes::{
    balancedness_bijection, count_preimages, find_mutually_erasable, post_surjectivity_probe, preimage_histogram,
    synthesize_inverse_patch, InverseOptions, WitnessSet,
};
use crate::report::inverse_of;
use crate::sofic::{
    counting_feasibility, greedy_packing, phi_image_count, torus_approximation, verify_approximation,
};
use crate::symbolic::{
    decide_balanced_1d, decide_injective_periodic, decide_postsurjective_1d, decide_preinjective, decide_reversible,
    decide_surjective, sft_language_count, strong_irreducibility_constant,
};
use crate::verdict::{Certificate, Status};

/// Random instances per property in criterion 8.
pub const PROPERTY_INSTANCES: usize = 1000;
/// Pattern pairs sampled per rule in criterion 4.
pub const BIJECTION_PAIRS: usize = 50;
/// Random patterns per level in criterion 5.
pub const CRITICAL_SAMPLES: usize = 100;
/// Longest word scanned by the brute-force orphan oracle in criterion 2.
pub const ORPHAN_SCAN: usize = 8;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    check: fn(&Limits) -> Result<Check>,
}

/// What a criterion's check found, before timing is considered.
pub struct Check {
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(holds: bool, detail: impl Into<String>) -> Result<Check> {
        Ok(Check {
            holds,
            detail: detail.into(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub holds: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.holds && self.elapsed <= self.budget
    }

    /// `PASS criterion 3 (inverse synthesis) 0.41s/30s: detail`.
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}) {:.2}s/{}s: {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

impl Criterion {
    pub fn run(&self, limits: &Limits) -> CriterionResult {
        let start = Instant::now();
        let (holds, detail) = match (self.check)(limits) {
            Ok(c) => (c.holds, c.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        CriterionResult {
            id: self.id,
            title: self.title,
            holds,
            detail,
            elapsed: start.elapsed(),
            budget: self.budget,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "rule 102 profile",
            budget: secs(5),
            check: rule102_profile,
        },
        Criterion {
            id: 2,
            title: "elementary rule sweep",
            budget: secs(120),
            check: elementary_sweep,
        },
        Criterion {
            id: 3,
            title: "inverse synthesis",
            budget: secs(30),
            check: inverse_synthesis,
        },
        Criterion {
            id: 4,
            title: "balancedness bijection",
            budget: secs(60),
            check: bijection,
        },
        Criterion {
            id: 5,
            title: "majority on F_2",
            budget: secs(300),
            check: majority,
        },
        Criterion {
            id: 6,
            title: "golden mean shift",
            budget: secs(5),
            check: golden,
        },
        Criterion {
            id: 7,
            title: "sofic subsystem",
            budget: secs(60),
            check: sofic,
        },
        Criterion {
            id: 8,
            title: "property suites",
            budget: secs(60),
            check: properties,
        },
    ]
}

pub fn run_all(limits: &Limits) -> Vec<CriterionResult> {
    criteria().iter().map(|c| c.run(limits)).collect()
}

fn rule102_profile(l: &Limits) -> Result<Check> {
    let rule = xor_rule102();
    let statuses = [
        ("surjective", decide_surjective(&rule, l)?.status, Status::Yes),
        ("injective", decide_injective_periodic(&rule, l)?.status, Status::No),
        ("preinjective", decide_preinjective(&rule, l)?.status, Status::Yes),
        ("reversible", decide_reversible(&rule, l)?.status, Status::No),
        ("postsurjective", decide_postsurjective_1d(&rule, l)?.status, Status::No),
        ("balanced", decide_balanced_1d(&rule, 3, l)?.status, Status::Yes),
    ];
    let z = Group::integers();
    let mut counts_ok = true;
    for n in 0..=3 {
        let hist = preimage_histogram(&rule, &z.disk(n, l)?.elements, &z.disk(n + 1, l)?.elements, l)?;
        counts_ok &= hist.iter().all(|&c| c == 4);
    }
    let wrong: Vec<&str> = statuses.iter().filter(|(_, a, b)| a != b).map(|(p, _, _)| *p).collect();
    Check::new(
        wrong.is_empty() && counts_ok,
        if wrong.is_empty() {
            format!("all six verdicts as expected; every pattern on D_n, n <= 3, has 4 preimages: {counts_ok}")
        } else {
            format!("unexpected verdicts for {wrong:?}")
        },
    )
}

/// Shortest word of length at most `max_len` with no preimage under an
/// elementary rule, found by evaluating the table on every extension.
pub fn brute_force_orphan(code: u8, max_len: usize) -> Option<Vec<u8>> {
    let image = |w: &[u8]| -> Vec<u8> {
        w.windows(3)
            .map(|t| (code >> (4 * t[0] + 2 * t[1] + t[2])) & 1)
            .collect()
    };
    for len in 1..=max_len {
        let mut hit = vec![false; 1 << len];
        for x in 0u32..1 << (len + 2) {
            let word: Vec<u8> = (0..len + 2).rev().map(|i| ((x >> i) & 1) as u8).collect();
            let y = image(&word).iter().fold(0usize, |acc, &b| 2 * acc + b as usize);
            hit[y] = true;
        }
        if let Some(y) = hit.iter().position(|&h| !h) {
            return Some((0..len).rev().map(|i| ((y >> i) & 1) as u8).collect());
        }
    }
    None
}

fn elementary_sweep(l: &Limits) -> Result<Check> {
    let mut disagreements = Vec::new();
    let mut surjective = 0;
    let mut reversible = 0;
    for code in 0..=255u8 {
        let rule = LocalRule::elementary(code);
        let surj = decide_surjective(&rule, l)?;
        let pre = decide_preinjective(&rule, l)?.status;
        let bal = decide_balanced_1d(&rule, 3, l)?.status;
        let post = decide_postsurjective_1d(&rule, l)?.status;
        let rev = decide_reversible(&rule, l)?.status;
        let orphan_len = match &surj.certificate {
            Some(Certificate::Orphan { word }) => Some(word.len()),
            _ => None,
        };
        let brute_len = brute_force_orphan(code, ORPHAN_SCAN).map(|w| w.len());
        let orphan_agrees = match orphan_len {
            Some(n) if n <= ORPHAN_SCAN => brute_len == Some(n),
            Some(_) => brute_len.is_none(),
            None => brute_len.is_none(),
        };
        if !(surj.status == pre && pre == bal && post == rev && orphan_agrees) {
            disagreements.push(code);
        }
        surjective += usize::from(surj.is_yes());
        reversible += usize::from(rev == Status::Yes);
    }
    Check::new(
        disagreements.is_empty(),
        format!(
            "{} disagreements; {surjective} surjective, {reversible} reversible; orphans cross-checked to length {ORPHAN_SCAN}",
            disagreements.len()
        ),
    )
}

fn inverse_synthesis(l: &Limits) -> Result<Check> {
    let mut notes = Vec::new();
    let mut holds = true;
    for code in [170u8, 15] {
        let rule = LocalRule::elementary(code);
        let synth = synthesize_inverse_patch(&rule, &InverseOptions::default(), l)?;
        let exact = decide_reversible(&rule, l)?;
        let ok = match (inverse_of(&synth.verdict), inverse_of(&exact)) {
            (Some(h), Some(reference)) => {
                rule.compose(h)?.is_identity() && h.compose(&rule)?.is_identity() && h.same_map(reference)
            }
            _ => false,
        };
        holds &= ok;
        notes.push(format!("rule {code}: {}", if ok { "inverse matches" } else { "mismatch" }));
    }
    Check::new(holds, notes.join("; "))
}

fn bijection(l: &Limits) -> Result<Check> {
    let z = Group::integers();
    let d2 = z.disk(2, l)?.elements;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut holds = true;
    let mut checked = 0;
    for code in [170u8, 15] {
        let rule = LocalRule::elementary(code);
        let Some(inverse) = inverse_of(&decide_reversible(&rule, l)?).cloned() else {
            return Check::new(false, format!("rule {code} has no inverse"));
        };
        for _ in 0..BIJECTION_PAIRS {
            let mut random = || -> Vec<u8> { d2.iter().map(|_| rng.gen_range(0..2)).collect() };
            let (a, b) = (random(), random());
            let report = balancedness_bijection(&rule, &inverse, &Pattern::on(&d2, &a), &Pattern::on(&d2, &b), 2, l)?;
            holds &= report.holds() && report.expected == 4;
            checked += 1;
        }
    }
    Check::new(holds, format!("{checked} pattern pairs on D_2, each with 4 = 2^(|D_3|-|D_2|) preimages"))
}

fn majority(l: &Limits) -> Result<Check> {
    let rule = majority_f2();
    let f2 = Group::Free(2);
    let mut notes = Vec::new();

    let erasable = find_mutually_erasable(&rule, 0, l)?.is_yes();
    notes.push(format!("erasable at m = 0: {erasable}"));

    let d1 = f2.disk(1, l)?.elements;
    let d2 = f2.disk(2, l)?.elements;
    let zero = count_preimages(&rule, &Pattern::uniform(&d1, 0), &d2, l)?;
    let mixed = count_preimages(&rule, &Pattern::on(&d1, &[1, 0, 0, 0, 0]), &d2, l)?;
    let unequal = zero.count != mixed.count;
    notes.push(format!("D_1 counts {} vs {}", zero.count, mixed.count));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut critical = true;
    for n in 0..=2 {
        let d = f2.disk(n + 1, l)?.elements;
        for _ in 0..CRITICAL_SAMPLES {
            let cells: Vec<u8> = d.iter().map(|_| rng.gen_range(0..2)).collect();
            let c = Pattern::on(&d, &cells);
            critical &= is_critical_preimage(&critical_preimage(&c, n, None)?, &c, n)?;
        }
    }
    notes.push(format!("critical preimages: {critical}"));

    let w = non_postsurj_witness_f2(4)?;
    let witness_ok = has_mixed_children(&w.c, 4)? && is_critical_preimage(&w.e, &w.c, 3)?;
    let probe = post_surjectivity_probe(&rule, &WitnessSet::Explicit(vec![w.e.clone()]), 2, l)?;
    let uncorrectable = probe.status == Status::Unknown
        && matches!(probe.certificate, Some(Certificate::Uncorrectable { radius: 2, .. }))
        && check_uncorrectable(&rule, &w.e, 1, 2, l)?;
    notes.push(format!("witness valid: {witness_ok}; no correction inside D_2: {uncorrectable}"));

    Check::new(erasable && unequal && critical && witness_ok && uncorrectable, notes.join("; "))
}

fn golden(l: &Limits) -> Result<Check> {
    let sft = golden_mean();
    let counts: Vec<u128> = (1..=15).map(|n| sft_language_count(&sft, n, l)).collect::<Result<_>>()?;
    let (mut a, mut b) = (1u128, 2u128);
    let mut fib = Vec::new();
    for _ in 0..15 {
        (a, b) = (b, a + b);
        fib.push(a);
    }
    let recurrence = (2..15).all(|i| counts[i] == counts[i - 1] + counts[i - 2]);
    let k = strong_irreducibility_constant(&sft, 4, l)?;
    Check::new(
        counts == fib && recurrence && k == Some(1),
        format!("counts {:?}..{}; constant {k:?}", &counts[..4], counts[14]),
    )
}

fn sofic(l: &Limits) -> Result<Check> {
    let z = Group::integers();
    let mut tori = 0;
    let mut tori_ok = true;
    for r in 0..=4 {
        for n in 2 * r + 2..=20 {
            let a = torus_approximation(1, n, r, l)?;
            tori_ok &= a.members.len() == n && verify_approximation(&a.graph, &a.members, r, 1e-9, &z, l)?.is_yes();
            tori += 1;
        }
    }
    let c12 = torus_approximation(1, 12, 2, l)?;
    let packing = greedy_packing(&c12.graph, &c12.members, 1, &z, l)?;
    let packing_ok = packing.len() == 4 && packing.len() * 10 >= 12;

    let c8 = torus_approximation(1, 8, 1, l)?;
    let count = |code: u8| phi_image_count(&c8.graph, &c8.members, &LocalRule::elementary(code), l);
    let images = [count(170)?, count(102)?, count(0)?];
    let images_ok = images == [256, 128, 1];

    let small = counting_feasibility(2, 5, 17, 1e-3)?;
    let large = counting_feasibility(2, 5, 17, 1.0)?;
    let feasibility_ok = small.feasible && !large.feasible;
    Check::new(
        tori_ok && packing_ok && images_ok && feasibility_ok,
        format!(
            "{tori} tori verified: {tori_ok}; |W| = {}; images {images:?}; margins {:.4} and {:.4}",
            packing.len(),
            small.log_margin,
            large.log_margin
        ),
    )
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn group(&mut self) -> Group {
        *[Group::integers(), Group::FreeAbelian(2), Group::Free(2)]
            .choose(&mut self.rng)
            .expect("nonempty")
    }

    fn element(&mut self, group: &Group, max_len: usize) -> GroupElement {
        let letters = group.letters();
        let len = self.rng.gen_range(0..=max_len);
        (0..len).fold(group.identity(), |g, _| {
            g.mul_letter(*letters.choose(&mut self.rng).expect("nonempty"))
        })
    }

    fn rule(&mut self, group: Group, l: &Limits) -> Result<LocalRule> {
        let s = self.rng.gen_range(2..=3u8);
        let mut pool = group.disk(1, l)?.elements;
        pool.shuffle(&mut self.rng);
        let size = self.rng.gen_range(1..=pool.len().min(4));
        pool.truncate(size);
        let arity = pool.len() as u32;
        let table = (0..(s as usize).pow(arity)).map(|_| self.rng.gen_range(0..s)).collect();
        LocalRule::new(Alphabet::new(s)?, Neighborhood::new(group, pool)?, table)
    }

    fn configuration(&mut self, group: Group, s: u8, l: &Limits) -> Result<PatchedConfiguration> {
        let disk = group.disk(2, l)?.elements;
        let background = self.rng.gen_range(0..s);
        let mut cells = Vec::new();
        for g in disk {
            if self.rng.gen_bool(0.3) {
                cells.push((g, self.rng.gen_range(0..s)));
            }
        }
        PatchedConfiguration::new(group, Background::Uniform(background), cells)
    }
}

/// Runs each property on `instances` seeded random instances and returns
/// the number of violations per property.
pub fn property_violations(instances: usize, seed: u64, l: &Limits) -> Result<[(&'static str, usize); 5]> {
    let mut sampler = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut bad = [
        ("equivariance", 0),
        ("locality", 0),
        ("metric axioms", 0),
        ("disk counts", 0),
        ("difference bound", 0),
    ];
    let f2_d2 = Group::Free(2).disk(2, l)?.len();
    bad[3].1 += usize::from(f2_d2 != 17);
    for _ in 0..instances {
        let group = sampler.group();
        let rule = sampler.rule(group, l)?;
        let c = sampler.configuration(group, rule.states(), l)?;
        let image = c.apply(&rule)?;

        let g = sampler.element(&group, 3);
        let moved = c.translate(&g)?.apply(&rule)? == image.translate(&g)?;
        bad[0].1 += usize::from(!moved);

        let at = sampler.element(&group, 2);
        let seen: Vec<GroupElement> = rule
            .neighborhood()
            .elements()
            .iter()
            .map(|n| group.mul(&at, n))
            .collect::<Result<_>>()?;
        let mut far = c.clone();
        for _ in 0..3 {
            let x = sampler.element(&group, 4);
            if !seen.contains(&x) {
                far.set(x, sampler.rng.gen_range(0..rule.states()));
            }
        }
        bad[1].1 += usize::from(far.apply(&rule)?.get(&at) != image.get(&at));

        let (x, y, z) = (
            sampler.element(&group, 4),
            sampler.element(&group, 4),
            sampler.element(&group, 4),
        );
        let d = |a: &GroupElement, b: &GroupElement| group.distance(a, b);
        let metric = d(&x, &x)? == 0
            && (x == y) == (d(&x, &y)? == 0)
            && d(&x, &y)? == d(&y, &x)?
            && d(&x, &z)? <= d(&x, &y)? + d(&y, &z)?
            && d(&group.mul(&z, &x)?, &group.mul(&z, &y)?)? == d(&x, &y)?;
        bad[2].1 += usize::from(!metric);

        let r = sampler.rng.gen_range(0..=3);
        let disk = group.disk(r, l)?;
        bad[3].1 += usize::from(Some(disk.len() as u128) != group.disk_size(r));

        let other = {
            let mut o = c.clone();
            for _ in 0..sampler.rng.gen_range(1..=4) {
                let x = sampler.element(&group, 3);
                o.set(x, sampler.rng.gen_range(0..rule.states()));
            }
            o
        };
        let before = c.difference(&other)?.len();
        let after = image.difference(&other.apply(&rule)?)?.len();
        bad[4].1 += usize::from(after > before * rule.neighborhood().len());
    }
    Ok(bad)
}

fn properties(l: &Limits) -> Result<Check> {
    let bad = property_violations(PROPERTY_INSTANCES, 8, l)?;
    let total: usize = bad.iter().map(|(_, n)| n).sum();
    let summary: Vec<String> = bad.iter().map(|(p, n)| format!("{p} {n}")).collect();
    Check::new(
        total == 0,
        format!("{PROPERTY_INSTANCES} instances; violations: {}", summary.join(", ")),
    )
}
