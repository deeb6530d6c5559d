//! Library results against brute-force computations written out here.

use std::collections::HashSet;

use cagroup::ca::LocalRule;
use cagroup::certify::recheck;
use cagroup::corpus::golden_mean;
use cagroup::group::Group;
use cagroup::limits::Limits;
use cagroup::report::Report;
use cagroup::sofic::{phi_image_count, torus_approximation};
use cagroup::symbolic::{
    decide_balanced_1d, decide_preinjective, decide_reversible, decide_surjective, sft_language_count,
};

fn eca(code: u8, l: u8, c: u8, r: u8) -> u8 {
    (code >> (4 * l + 2 * c + r)) & 1
}

fn bits(x: u32, len: usize) -> Vec<u8> {
    (0..len).rev().map(|i| ((x >> i) & 1) as u8).collect()
}

/// Preimage count of every word of length `n`, over words of length `n + 2`.
fn preimage_counts(code: u8, n: usize) -> Vec<u32> {
    let mut counts = vec![0u32; 1 << n];
    for x in 0..1u32 << (n + 2) {
        let w = bits(x, n + 2);
        let y = w.windows(3).fold(0usize, |acc, t| 2 * acc + eca(code, t[0], t[1], t[2]) as usize);
        counts[y] += 1;
    }
    counts
}

/// Injective on every spatially periodic configuration of period at most `p`.
fn injective_on_periodic_points(code: u8, p: usize) -> bool {
    (1..=p).all(|n| {
        let mut images = HashSet::new();
        (0..1u32 << n).all(|x| {
            let w = bits(x, n);
            let img: Vec<u8> = (0..n).map(|i| eca(code, w[(i + n - 1) % n], w[i], w[(i + 1) % n])).collect();
            images.insert(img)
        })
    })
}

#[test]
fn rule102_has_four_preimages_everywhere() {
    for n in 1..=7 {
        assert!(preimage_counts(102, n).iter().all(|&c| c == 4), "length {n}");
    }
}

#[test]
fn surjectivity_matches_uniform_preimage_counts() {
    let l = Limits::default();
    for code in 0..=255u8 {
        let rule = LocalRule::elementary(code);
        let counted = preimage_counts(code, 10).iter().all(|&c| c == 4);
        assert_eq!(decide_surjective(&rule, &l).unwrap().is_yes(), counted, "rule {code}");
        assert_eq!(decide_balanced_1d(&rule, 2, &l).unwrap().is_yes(), counted, "rule {code}");
        assert_eq!(decide_preinjective(&rule, &l).unwrap().is_yes(), counted, "rule {code}");
    }
}

#[test]
fn reversible_elementary_rules() {
    let l = Limits::default();
    let reversible: Vec<u8> = (0..=255u8)
        .filter(|&c| decide_reversible(&LocalRule::elementary(c), &l).unwrap().is_yes())
        .collect();
    assert_eq!(reversible, vec![15, 51, 85, 170, 204, 240]);
    for code in 0..=255u8 {
        if !reversible.contains(&code) {
            assert!(!injective_on_periodic_points(code, 10), "rule {code}");
        } else {
            assert!(injective_on_periodic_points(code, 10), "rule {code}");
        }
    }
}

#[test]
fn golden_mean_counts_by_enumeration() {
    let l = Limits::default();
    for n in 1..=16 {
        let brute = (0..1u32 << n).filter(|x| x & (x >> 1) == 0).count() as u128;
        assert_eq!(sft_language_count(&golden_mean(), n, &l).unwrap(), brute, "length {n}");
    }
}

#[test]
fn cycle_images_by_enumeration() {
    let l = Limits::default();
    let c8 = torus_approximation(1, 8, 1, &l).unwrap();
    for code in [0u8, 15, 30, 90, 102, 110, 170, 232] {
        let brute: HashSet<Vec<u8>> = (0..256u32)
            .map(|x| {
                let w = bits(x, 8);
                (0..8).map(|i| eca(code, w[(i + 7) % 8], w[i], w[(i + 1) % 8])).collect()
            })
            .collect();
        let rule = LocalRule::elementary(code);
        assert_eq!(
            phi_image_count(&c8.graph, &c8.members, &rule, &l).unwrap(),
            brute.len() as u128,
            "rule {code}"
        );
    }
}

#[test]
fn reports_round_trip_and_recheck() {
    let l = Limits::default();
    let z = Group::integers();
    for code in [0u8, 15, 90, 102, 110, 170] {
        let rule = LocalRule::elementary(code);
        let verdicts = [
            decide_surjective(&rule, &l).unwrap(),
            decide_preinjective(&rule, &l).unwrap(),
            decide_reversible(&rule, &l).unwrap(),
            decide_balanced_1d(&rule, 2, &l).unwrap(),
        ];
        let mut report = Report::new();
        for (i, v) in verdicts.iter().enumerate() {
            report.push_verdict(&format!("v{i}."), v);
        }
        let back = Report::parse(&report.to_text()).unwrap();
        for (i, v) in verdicts.iter().enumerate() {
            let parsed = back.verdict(&format!("v{i}."), z).unwrap();
            assert_eq!(&parsed, v);
            assert_eq!(recheck(&rule, &parsed, &l).unwrap(), Some(true), "rule {code}, verdict {i}");
        }
    }
}
