use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, RngSeed};

use cagroup::ca::{Alphabet, Background, LocalRule, Neighborhood, PatchedConfiguration};
use cagroup::group::{Group, GroupElement, Letter};
use cagroup::limits::Limits;

const GROUPS: [Group; 3] = [Group::FreeAbelian(1), Group::FreeAbelian(2), Group::Free(2)];

fn limits() -> Limits {
    Limits::default()
}

/// A word of letter choices read as a group element.
fn element(group: Group, steps: &[(usize, bool)]) -> GroupElement {
    steps.iter().fold(group.identity(), |g, &(i, inv)| {
        g.mul_letter(Letter::new(i % group.rank() + 1, inv))
    })
}

fn steps(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0..4usize, any::<bool>()), 0..=max)
}

#[derive(Debug, Clone)]
struct Case {
    rule: LocalRule,
    config: PatchedConfiguration,
}

fn case() -> impl Strategy<Value = Case> {
    (0..3usize, 2..=3u8, prop::collection::vec(any::<bool>(), 13), any::<u64>(), any::<u8>())
        .prop_flat_map(|(gi, s, mask, table_seed, bg)| {
            let group = GROUPS[gi];
            let pool = group.disk(1, &limits()).unwrap().elements;
            let mut nbhd: Vec<GroupElement> =
                pool.iter().zip(&mask).filter(|(_, &m)| m).map(|(g, _)| g.clone()).take(4).collect();
            if nbhd.is_empty() {
                nbhd.push(pool[table_seed as usize % pool.len()].clone());
            }
            let arity = nbhd.len() as u32;
            let disk = group.disk(2, &limits()).unwrap().elements;
            (
                Just(group),
                Just(s),
                Just(nbhd),
                prop::collection::vec(0..s, (s as usize).pow(arity)),
                Just(bg % s),
                prop::collection::vec((0..disk.len(), 0..s), 0..6),
                Just(disk),
            )
        })
        .prop_map(|(group, s, nbhd, table, bg, cells, disk)| {
            let rule = LocalRule::new(Alphabet::new(s).unwrap(), Neighborhood::new(group, nbhd).unwrap(), table).unwrap();
            let diff = cells.into_iter().map(|(i, v)| (disk[i].clone(), v));
            let config = PatchedConfiguration::new(group, Background::Uniform(bg), diff).unwrap();
            Case { rule, config }
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(20),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn global_map_commutes_with_shifts(c in case(), g in steps(4)) {
        let group = c.rule.group();
        let g = element(group, &g);
        let lhs = c.config.translate(&g).unwrap().apply(&c.rule).unwrap();
        let rhs = c.config.apply(&c.rule).unwrap().translate(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn image_cell_depends_on_its_neighbors_only(c in case(), at in steps(2), far in prop::collection::vec((steps(4), 0..3u8), 1..4)) {
        let group = c.rule.group();
        let at = element(group, &at);
        let seen: Vec<GroupElement> =
            c.rule.neighborhood().elements().iter().map(|n| group.mul(&at, n).unwrap()).collect();
        let mut other = c.config.clone();
        for (x, v) in far {
            let x = element(group, &x);
            if !seen.contains(&x) {
                other.set(x, v % c.rule.states());
            }
        }
        prop_assert_eq!(
            c.config.apply(&c.rule).unwrap().get(&at),
            other.apply(&c.rule).unwrap().get(&at)
        );
    }

    #[test]
    fn word_metric_axioms(gi in 0..3usize, x in steps(5), y in steps(5), z in steps(5)) {
        let group = GROUPS[gi];
        let (x, y, z) = (element(group, &x), element(group, &y), element(group, &z));
        let d = |a: &GroupElement, b: &GroupElement| group.distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(x == y, d(&x, &y) == 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&group.mul(&z, &x).unwrap(), &group.mul(&z, &y).unwrap()), d(&x, &y));
    }

    #[test]
    fn disks_match_their_closed_form(gi in 0..3usize, r in 0..4usize) {
        let group = GROUPS[gi];
        let disk = group.disk(r, &limits()).unwrap();
        prop_assert_eq!(Some(disk.len() as u128), group.disk_size(r));
        prop_assert!(disk.elements.iter().all(|g| g.length() <= r));
    }

    #[test]
    fn differences_spread_at_most_by_the_neighborhood(c in case(), changes in prop::collection::vec((steps(3), 0..3u8), 1..5)) {
        let group = c.rule.group();
        let mut other = c.config.clone();
        for (x, v) in changes {
            other.set(element(group, &x), v % c.rule.states());
        }
        let before = c.config.difference(&other).unwrap().len();
        let after = c
            .config
            .apply(&c.rule)
            .unwrap()
            .difference(&other.apply(&c.rule).unwrap())
            .unwrap()
            .len();
        prop_assert!(after <= before * c.rule.neighborhood().len());
    }
}

#[test]
fn free_group_disk_of_radius_two() {
    let d2 = Group::Free(2).disk(2, &limits()).unwrap();
    assert_eq!(d2.len(), 17);
    assert_eq!(Group::Free(2).disk_size(2), Some(17));
    assert_eq!(Group::FreeAbelian(2).disk(2, &limits()).unwrap().len(), 13);
}
