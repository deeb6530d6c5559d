//! Named examples with scripted assertions, and the plot-data tables the
//! demo emits for each of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::{LocalRule, Pattern};
use crate::corpus::{
    agreement_counts, critical_preimage, cut_and_paste_demo, golden_mean, is_critical_preimage, majority_f2,
    non_postsurj_witness_f2, xor_rule102,
};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::limits::Limits;
use crate::probes::{
    check_balanced, count_preimages, find_mutually_erasable, post_surjectivity_probe, preimage_histogram, WitnessSet,
};
use crate::report::{Report, Table};
use crate::symbolic::{
    decide_injective_periodic, decide_postsurjective_1d, decide_preinjective, decide_reversible, decide_surjective,
    sft_language_count, strong_irreducibility_constant, Sft,
};
use crate::verdict::{word_string, Status, Verdict};

/// What an example is about.
#[derive(Debug, Clone)]
pub enum Subject {
    Rule(LocalRule),
    Shift(Sft),
}

/// What an assertion observed: a verdict from a decision procedure, or a
/// plain comparison for quantities that are not verdicts.
#[derive(Debug, Clone)]
pub enum Observation {
    Verdict(Verdict),
    Check { holds: bool, detail: String },
}

impl Observation {
    pub fn status(&self) -> Status {
        match self {
            Observation::Verdict(v) => v.status,
            Observation::Check { holds, .. } => Status::from_bool(*holds),
        }
    }

    fn check(holds: bool, detail: impl Into<String>) -> Observation {
        Observation::Check {
            holds,
            detail: detail.into(),
        }
    }
}

pub struct Assertion {
    pub property: &'static str,
    pub expected: Status,
    /// Why the expected status is the right one.
    pub reason: &'static str,
    run: fn(&Limits) -> Result<Observation>,
}

impl Assertion {
    pub fn run(&self, limits: &Limits) -> Result<Observation> {
        (self.run)(limits)
    }
}

pub struct NamedExample {
    pub id: &'static str,
    pub summary: &'static str,
    pub subject: Subject,
    pub assertions: Vec<Assertion>,
}

/// Result of running one assertion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub property: &'static str,
    pub expected: Status,
    pub observed: Observation,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.observed.status() == self.expected
    }
}

impl NamedExample {
    pub fn run(&self, limits: &Limits) -> Result<Vec<Outcome>> {
        self.assertions
            .iter()
            .map(|a| {
                Ok(Outcome {
                    property: a.property,
                    expected: a.expected,
                    observed: a.run(limits)?,
                })
            })
            .collect()
    }
}

pub const EXAMPLE_IDS: [&str; 4] = ["xor102", "majority-f2", "golden-mean", "cut-and-paste"];

fn verdict(v: Result<Verdict>) -> Result<Observation> {
    v.map(Observation::Verdict)
}

fn xor102() -> NamedExample {
    NamedExample {
        id: "xor102",
        summary: "rule 102 as x0 xor x1 on Z",
        subject: Subject::Rule(xor_rule102()),
        assertions: vec![
            Assertion {
                property: "surjective",
                expected: Status::Yes,
                reason: "xor with a fixed neighbor is onto",
                run: |l| verdict(decide_surjective(&xor_rule102(), l)),
            },
            Assertion {
                property: "injective",
                expected: Status::No,
                reason: "all-0 and all-1 both map to all-0",
                run: |l| verdict(decide_injective_periodic(&xor_rule102(), l)),
            },
            Assertion {
                property: "preinjective",
                expected: Status::Yes,
                reason: "a finite difference has a nonzero leftmost image cell",
                run: |l| verdict(decide_preinjective(&xor_rule102(), l)),
            },
            Assertion {
                property: "reversible",
                expected: Status::No,
                reason: "not injective",
                run: |l| verdict(decide_reversible(&xor_rule102(), l)),
            },
            Assertion {
                property: "postsurjective",
                expected: Status::No,
                reason: "lifting a single flip needs an infinite change of the preimage",
                run: |l| verdict(decide_postsurjective_1d(&xor_rule102(), l)),
            },
            Assertion {
                property: "balanced",
                expected: Status::Yes,
                reason: "each pattern on D_n has 4 preimages on D_(n+1)",
                run: |l| verdict(check_balanced(&xor_rule102(), 3, l)),
            },
        ],
    }
}

/// Two patterns on `D_1` of `F_2` whose preimage counts on `D_2` differ.
fn majority_deviation(l: &Limits) -> Result<Observation> {
    let f2 = Group::Free(2);
    let d1 = f2.disk(1, l)?.elements;
    let d2 = f2.disk(2, l)?.elements;
    let rule = majority_f2();
    let zero = count_preimages(&rule, &Pattern::uniform(&d1, 0), &d2, l)?;
    let mixed = count_preimages(&rule, &Pattern::on(&d1, &[1, 0, 0, 0, 0]), &d2, l)?;
    Ok(Observation::check(
        zero.count != mixed.count,
        format!(
            "{} has {} preimages, {} has {}, balanced value {}",
            zero.pattern, zero.count, mixed.pattern, mixed.count, zero.expected
        ),
    ))
}

fn majority_critical(l: &Limits) -> Result<Observation> {
    let f2 = Group::Free(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for n in 0..=2 {
        let d = f2.disk(n + 1, l)?.elements;
        for _ in 0..100 {
            let cells: Vec<u8> = d.iter().map(|_| rng.gen_range(0..2)).collect();
            let c = Pattern::on(&d, &cells);
            let e = critical_preimage(&c, n, None)?;
            if !is_critical_preimage(&e, &c, n)? {
                return Ok(Observation::check(false, format!("fails at n = {n} for {c}")));
            }
            checked += 1;
        }
    }
    Ok(Observation::check(true, format!("{checked} random patterns, n <= 2")))
}

fn majority_witness(l: &Limits) -> Result<Observation> {
    let w = non_postsurj_witness_f2(4)?;
    verdict(post_surjectivity_probe(&majority_f2(), &WitnessSet::Explicit(vec![w.e]), 2, l))
}

fn majority() -> NamedExample {
    NamedExample {
        id: "majority-f2",
        summary: "majority of the five cells 1, a, A, b, B on F_2",
        subject: Subject::Rule(majority_f2()),
        assertions: vec![
            Assertion {
                property: "erasable-at-m0",
                expected: Status::Yes,
                reason: "a single 1 in the all-0 background disappears",
                run: |l| verdict(find_mutually_erasable(&majority_f2(), 0, l)),
            },
            Assertion {
                property: "balanced",
                expected: Status::No,
                reason: "not pre-injective, and balance fails already on D_1",
                run: |l| verdict(check_balanced(&majority_f2(), 1, l)),
            },
            Assertion {
                property: "unequal-d1-counts",
                expected: Status::Yes,
                reason: "preimage counts on D_2 depend on the D_1 pattern",
                run: majority_deviation,
            },
            Assertion {
                property: "critical-preimages",
                expected: Status::Yes,
                reason: "the outward construction always reaches three agreements",
                run: majority_critical,
            },
            Assertion {
                property: "postsurjective-within-d2",
                expected: Status::Unknown,
                reason: "the critical witness admits no correction inside D_2",
                run: majority_witness,
            },
        ],
    }
}

fn golden() -> NamedExample {
    NamedExample {
        id: "golden-mean",
        summary: "binary sequences without 11",
        subject: Subject::Shift(golden_mean()),
        assertions: vec![
            Assertion {
                property: "fibonacci-counts",
                expected: Status::Yes,
                reason: "words of length n number f_(n+2)",
                run: |l| {
                    let counts = golden_counts(15, l)?;
                    let fib = fibonacci_from(2, 3, 15);
                    Ok(Observation::check(counts == fib, format!("counts {counts:?}")))
                },
            },
            Assertion {
                property: "forbids-11",
                expected: Status::Yes,
                reason: "11 is the forbidden word",
                run: |_| Ok(Observation::check(!golden_mean().admissible(&[1, 1]), "11 rejected")),
            },
            Assertion {
                property: "strong-irreducibility-1",
                expected: Status::Yes,
                reason: "a single 0 separates any two words",
                run: |l| {
                    let k = strong_irreducibility_constant(&golden_mean(), 4, l)?;
                    Ok(Observation::check(k == Some(1), format!("constant {k:?}")))
                },
            },
        ],
    }
}

fn cut_paste() -> NamedExample {
    NamedExample {
        id: "cut-and-paste",
        summary: "pasting 00 into the periodic point ..0101.. of the golden mean shift",
        subject: Subject::Shift(golden_mean()),
        assertions: vec![
            Assertion {
                property: "paste-admissible",
                expected: Status::Yes,
                reason: "strong irreducibility leaves room for a bridge",
                run: |_| {
                    let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[0, 0], 0, 3)?;
                    let at = (-w.start) as usize;
                    let holds = golden_mean().admissible(&w.cells) && w.cells[at..at + 2] == [0, 0];
                    Ok(Observation::check(holds, format!("window {} from {}", w.text(), w.start)))
                },
            },
            Assertion {
                property: "paste-identical-is-noop",
                expected: Status::Yes,
                reason: "pasting the values already there changes nothing",
                run: |_| {
                    let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[0, 1], 0, 3)?;
                    Ok(Observation::check(w.changed.is_empty(), format!("changed {:?}", w.changed)))
                },
            },
        ],
    }
}

pub fn named_examples() -> Vec<NamedExample> {
    vec![xor102(), majority(), golden(), cut_paste()]
}

pub fn named_example(id: &str) -> Result<NamedExample> {
    named_examples()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::InvalidInput(format!("unknown example {id:?}; known: {}", EXAMPLE_IDS.join(", "))))
}

fn golden_counts(n_max: usize, l: &Limits) -> Result<Vec<u128>> {
    (1..=n_max).map(|n| sft_language_count(&golden_mean(), n, l)).collect()
}

fn fibonacci_from(a: u128, b: u128, len: usize) -> Vec<u128> {
    let mut out = vec![a, b];
    while out.len() < len {
        out.push(out[out.len() - 1] + out[out.len() - 2]);
    }
    out.truncate(len);
    out
}

fn xor_tables(l: &Limits) -> Result<Vec<Table>> {
    let z = Group::integers();
    let rule = xor_rule102();
    let mut t = Table::new("preimage-counts", &["n", "pattern", "count", "expected"]);
    for n in 0..=3 {
        let e = z.disk(n, l)?;
        let m = z.disk(n + 1, l)?;
        let hist = preimage_histogram(&rule, &e.elements, &m.elements, l)?;
        let expected = 1u128 << (m.len() - e.len());
        let mut cells = vec![0u8; e.len()];
        for (i, count) in hist.iter().enumerate() {
            crate::ca::decode(i, 2, &mut cells);
            t.push(vec![
                n.to_string(),
                Pattern::on(&e.elements, &cells).to_string(),
                count.to_string(),
                expected.to_string(),
            ]);
        }
    }
    Ok(vec![t])
}

fn majority_tables(l: &Limits) -> Result<Vec<Table>> {
    let f2 = Group::Free(2);
    let w = non_postsurj_witness_f2(4)?;
    let agree = agreement_counts(&w.e, &w.c, 3)?;
    let mut ball = Table::new("ball-values", &["element", "length", "c", "e", "agreements"]);
    for (i, g) in f2.disk(4, l)?.elements.iter().enumerate() {
        ball.push(vec![
            g.to_string(),
            g.length().to_string(),
            w.c.get(g).expect("witness covers D_4").to_string(),
            w.e.get(g).expect("witness covers D_4").to_string(),
            agree.get(i).map_or("-".to_string(), |a| a.to_string()),
        ]);
    }
    let d1 = f2.disk(1, l)?.elements;
    let d2 = f2.disk(2, l)?.elements;
    let hist = preimage_histogram(&majority_f2(), &d1, &d2, l)?;
    let expected = 1u128 << (d2.len() - d1.len());
    let mut counts = Table::new("d1-preimage-counts", &["pattern", "count", "expected"]);
    let mut cells = [0u8; 5];
    for (i, count) in hist.iter().enumerate() {
        crate::ca::decode(i, 2, &mut cells);
        counts.push(vec![
            Pattern::on(&d1, &cells).to_string(),
            count.to_string(),
            expected.to_string(),
        ]);
    }
    Ok(vec![ball, counts])
}

fn golden_tables(l: &Limits) -> Result<Vec<Table>> {
    let counts = golden_counts(15, l)?;
    let fib = fibonacci_from(2, 3, 15);
    let mut t = Table::new("language-counts", &["n", "count", "fibonacci"]);
    for (n, (c, f)) in counts.iter().zip(&fib).enumerate() {
        t.push(vec![(n + 1).to_string(), c.to_string(), f.to_string()]);
    }
    Ok(vec![t])
}

fn cut_paste_tables() -> Result<Vec<Table>> {
    let w = cut_and_paste_demo(&golden_mean(), &[0, 1], &[0, 0], 0, 3)?;
    let mut t = Table::new("window", &["position", "c", "pasted", "changed"]);
    for (i, &x) in w.cells.iter().enumerate() {
        let pos = w.start + i as i64;
        t.push(vec![
            pos.to_string(),
            word_string(&[[0, 1][pos.rem_euclid(2) as usize]]),
            x.to_string(),
            u8::from(w.changed.contains(&pos)).to_string(),
        ]);
    }
    Ok(vec![t])
}

/// Runs an example's assertions and collects its report: one block of
/// entries per assertion (with the verdict and certificate, if any) and
/// the plot-data tables.
pub fn demo(id: &str, limits: &Limits) -> Result<Report> {
    let example = named_example(id)?;
    let mut report = Report::new();
    report.push("example", example.id);
    report.push("summary", example.summary);
    match &example.subject {
        Subject::Rule(rule) => {
            report.push("group", rule.group());
            report.push("states", rule.states());
            report.push("neighborhood", rule.neighborhood().len());
        }
        Subject::Shift(sft) => {
            let forbidden: Vec<String> = sft.forbidden().iter().map(|w| word_string(w)).collect();
            report.push("states", sft.states());
            report.push("forbidden", forbidden.join(","));
        }
    }
    let outcomes = example.run(limits)?;
    let mut passed = 0;
    for (a, o) in example.assertions.iter().zip(&outcomes) {
        let prefix = format!("assert.{}.", a.property);
        report.push(format!("{prefix}expected"), a.expected);
        report.push(format!("{prefix}reason"), a.reason);
        report.push(format!("{prefix}pass"), o.passed());
        match &o.observed {
            Observation::Verdict(v) => report.push_verdict(&prefix, v),
            Observation::Check { holds, detail } => {
                report.push(format!("{prefix}status"), Status::from_bool(*holds));
                report.push(format!("{prefix}detail"), detail);
            }
        }
        passed += usize::from(o.passed());
    }
    report.push("assertions.passed", format!("{passed}/{}", outcomes.len()));
    report.tables = match id {
        "xor102" => xor_tables(limits)?,
        "majority-f2" => majority_tables(limits)?,
        "golden-mean" => golden_tables(limits)?,
        _ => cut_paste_tables()?,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_examples_pass() {
        let l = Limits::default();
        for id in ["xor102", "golden-mean", "cut-and-paste"] {
            let outcomes = named_example(id).unwrap().run(&l).unwrap();
            for o in outcomes {
                assert!(o.passed(), "{id}: {} gave {:?}", o.property, o.observed);
            }
        }
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(named_example("rule30"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn demo_tables() {
        let l = Limits::default();
        let r = demo("golden-mean", &l).unwrap();
        let t = r.table("language-counts").unwrap();
        assert_eq!(t.rows.len(), 15);
        assert_eq!(t.rows[2], vec!["3", "5", "5"]);
        let r = demo("xor102", &l).unwrap();
        let t = r.table("preimage-counts").unwrap();
        assert_eq!(t.rows.len(), 2 + 8 + 32 + 128);
        assert!(t.rows.iter().all(|row| row[2] == "4"));
        assert_eq!(r.get("assertions.passed"), Some("6/6"));
    }

    #[test]
    fn fibonacci_helper() {
        assert_eq!(fibonacci_from(2, 3, 6), vec![2, 3, 5, 8, 13, 21]);
    }
}
