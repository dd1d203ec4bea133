mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use spiderlab::oracle::{brute_force, cross_check, OracleConfig};
use spiderlab::scheme_c::{
    classify, compute_params_c, construct_scheme_c, construct_scheme_c_with, find_trouble, label_scheme_c, RepairMode,
    SpiderType,
};
use spiderlab::*;

fn c_forest() -> impl Strategy<Value = Vec<Vec<usize>>> {
    let len = prop::sample::select(vec![1usize, 1, 2, 4, 6]);
    prop::collection::vec(prop::collection::vec(len, 3..=6), 1..=5)
}

fn sums_by_kind(f: &SpiderForest, l: &Labeling) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
    let sums = vertex_sums(f, l).unwrap().sums;
    let (mut leaves, mut deg2, mut centers) = (Vec::new(), Vec::new(), Vec::new());
    for (v, s) in sums.into_iter().enumerate() {
        match (f.vertex_ref(v), f.vertex_degree(v)) {
            (VertexRef::Center { .. }, _) => centers.push(s),
            (_, 1) => leaves.push(s),
            _ => deg2.push(s),
        }
    }
    (leaves, deg2, centers)
}

#[test]
fn star_s3() {
    let f = forest("s3.txt");
    let p = compute_params_c(&f, 0).unwrap();
    assert_eq!((p.t1, p.t2, p.t3), (1, 1, 1));
    assert_eq!(p.intervals[1], Interval::new(1, 3));
    let (l, log) = label_scheme_c(&f, 0).unwrap();
    assert_eq!(l.labels(), &[1, 3, 2]);
    assert!(log.is_empty());
    assert!(cross_check(&f, 0, Scheme::C, &OracleConfig::default()).unwrap().agree());
}

#[test]
fn spider_1122() {
    let f = forest("c_1122.txt");
    let p = compute_params_c(&f, 0).unwrap();
    assert_eq!(p.types, vec![SpiderType::C]);
    assert_eq!((p.s, p.m, p.m_prime), (2, 6, 2));
    assert_eq!(p.intervals, [Interval::new(1, 2), Interval::new(3, 4), Interval::new(5, 6)]);
    let (l, log) = label_scheme_c(&f, 0).unwrap();
    assert_eq!(l.labels(), &[3, 4, 1, 5, 2, 6]);
    assert!(log.is_empty());
    let (mut leaves, mut deg2, centers) = sums_by_kind(&f, &l);
    leaves.sort_unstable();
    deg2.sort_unstable();
    assert_eq!((leaves, deg2, centers), (vec![1, 2, 3, 4], vec![6, 8], vec![18]));
    assert!(cross_check(&f, 0, Scheme::C, &OracleConfig::default()).unwrap().agree());
}

#[test]
fn type_d_reserves_two_even_legs() {
    let f = parse_forest("spider 1 2 2 4").unwrap();
    assert_eq!(classify(&f, 1), SpiderType::D);
    let p = compute_params_c(&f, 0).unwrap();
    assert_eq!(p.reserved[0], vec![LegRef { spider: 1, leg: 2 }, LegRef { spider: 1, leg: 3 }]);
}

#[test]
fn no_d_spiders_no_trouble() {
    let f = parse_forest("spider 1 1 2 2\nspider 1 1 1 1\nspider 1 1 1").unwrap();
    let out = construct_scheme_c(&f, 0).unwrap();
    assert!(find_trouble(&out.params, &out.pre_repair_sums).is_empty());
    assert!(out.switch_log.is_empty());
}

#[test]
fn neighbour_swap_regression() {
    let f = forest("c_neighbour_swap.txt");
    let out = construct_scheme_c(&f, 0).unwrap();
    assert_eq!(find_trouble(&out.params, &out.pre_repair_sums), vec![2]);
    assert!(find_trouble(&out.params, &out.center_sums(&f)).is_empty());
    let swaps = &out.switch_log.swaps;
    assert_eq!(swaps.len(), 1);
    assert_eq!((swaps[0].label_a, swaps[0].label_b, swaps[0].fallback), (8, 9, false));
    assert!(check_antimagic(&f, &out.labeling).is_antimagic());
}

#[test]
fn wide_final_pair_regression() {
    let f = forest("c_wide_swap.txt");
    let out = construct_scheme_c(&f, 0).unwrap();
    let swaps = &out.switch_log.swaps;
    assert_eq!(swaps.len(), 1);
    let s = swaps[0];
    let t3 = out.params.t3 as i64;
    assert_eq!((s.label_a, s.label_b), (out.params.m_prime + 2 * t3 - 2, out.params.m_prime + 2 * t3));
    assert!(check_antimagic(&f, &out.labeling).is_antimagic());
}

#[test]
fn lone_trouble_spider_needs_the_fallback() {
    for (name, k) in [("c_lone_trouble.txt", 0), ("c_lone_trouble_2.txt", 7)] {
        let f = forest(name);
        let plain = construct_scheme_c_with(&f, k, RepairMode::NeighbourOnly).unwrap();
        assert_eq!(plain.params.t3 - plain.params.t1, 1);
        assert!(plain.switch_log.is_empty());
        assert!(!check_antimagic(&f, &plain.labeling).is_antimagic(), "{name}");

        let out = construct_scheme_c(&f, k).unwrap();
        assert_eq!(out.switch_log.swaps.len(), 1);
        assert!(out.switch_log.swaps[0].fallback);
        assert!(naive_antimagic(&legs_of(&f), k, out.labeling.labels()), "{name}");
    }
    let f = forest("c_lone_trouble.txt");
    assert!(brute_force(&f, 0, 10).unwrap().feasible);
}

#[test]
fn lone_fallback_outside_the_bands() {
    // no single swap keeps every degree-2 sum in its band here
    let f = forest("c_lone_unbanded.txt");
    let plain = construct_scheme_c_with(&f, 0, RepairMode::NeighbourOnly).unwrap();
    assert!(!check_antimagic(&f, &plain.labeling).is_antimagic());
    let out = construct_scheme_c(&f, 0).unwrap();
    assert!(out.switch_log.swaps[0].fallback);
    assert!(naive_antimagic(&legs_of(&f), 0, out.labeling.labels()));
    assert!(structural_ordering_check(&f, &out.labeling).unwrap().holds);
}

#[test]
fn rejects_odd_legs() {
    assert!(matches!(label_scheme_c(&parse_forest("spider 1 3 2").unwrap(), 0), Err(Error::Hypothesis(_))));
    assert!(matches!(label_scheme_c(&forest("s3.txt"), -1), Err(Error::NegativeShift { .. })));
}

#[test]
fn all_star_and_no_one_leg_extremes() {
    for text in ["spider 1 1 1\nspider 1 1 1 1 1", "spider 2 2 2\nspider 4 2 2"] {
        let f = parse_forest(text).unwrap();
        for k in SHIFTS {
            assert!(check_antimagic(&f, &label_scheme_c(&f, k).unwrap().0).is_antimagic(), "{f} k={k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn labels_are_antimagic(legs in c_forest(), k in prop::sample::select(SHIFTS.to_vec())) {
        let f = SpiderForest::from_legs(legs.clone()).unwrap();
        let out = construct_scheme_c(&f, k).unwrap();
        prop_assert!(out.spacing.holds(), "{:?}", out.spacing);
        prop_assert!(naive_antimagic(&legs, k, out.labeling.labels()));
        prop_assert!(find_trouble(&out.params, &out.center_sums(&f)).is_empty());
    }

    #[test]
    fn blocks_sorted_by_partial_sum(legs in c_forest()) {
        let f = SpiderForest::from_legs(legs).unwrap();
        let p = compute_params_c(&f, 0).unwrap();
        let key = |i: usize| (p.partial_sums[i - 1], i);
        for block in [&p.order[p.t1..p.t3], &p.order[p.t3..]] {
            prop_assert!(block.windows(2).all(|w| key(w[0]) < key(w[1])));
        }
        prop_assert!(p.order[..p.t1].iter().all(|&i| p.types[i - 1] == SpiderType::A));
        let h = (p.m - p.s) / 2;
        prop_assert_eq!(p.m_prime, (p.m + p.s) / 2 - p.t2 as i64 - 2 * p.t3 as i64);
        prop_assert_eq!(p.intervals.map(|i| i.len()), [h, p.s, h]);
    }

    #[test]
    fn neighbour_swaps_only_touch_centers(legs in c_forest(), k in 0i64..10) {
        let f = SpiderForest::from_legs(legs).unwrap();
        let out = construct_scheme_c_with(&f, k, RepairMode::NeighbourOnly).unwrap();
        let mut undone = out.labeling.clone();
        let mut labels = undone.labels().to_vec();
        for s in out.switch_log.swaps.iter().rev() {
            let d = (s.label_a - s.label_b).abs();
            prop_assert!(d == 1 || d == 2);
            let i = labels.iter().position(|&x| x == s.label_a).unwrap();
            let j = labels.iter().position(|&x| x == s.label_b).unwrap();
            labels.swap(i, j);
        }
        undone = Labeling::new(k, labels);
        let (l0, d0, _) = sums_by_kind(&f, &undone);
        let (l1, d1, _) = sums_by_kind(&f, &out.labeling);
        let set = |v: Vec<i64>| v.into_iter().collect::<HashSet<_>>();
        prop_assert_eq!(set(l0), set(l1));
        prop_assert_eq!(d0, d1);
    }

    #[test]
    fn degree_two_bounds(legs in c_forest(), k in 0i64..50) {
        let f = SpiderForest::from_legs(legs).unwrap();
        let out = construct_scheme_c(&f, k).unwrap();
        // the lone-spider fallback may leave the bands
        if out.switch_log.swaps.iter().any(|s| s.fallback) {
            return Ok(());
        }
        let p = &out.params;
        let (leaves, deg2, centers) = sums_by_kind(&f, &out.labeling);
        let half = k + (p.m + p.s) / 2;
        let bound = (k + (p.m - p.s) / 2) + (k + p.m);
        prop_assert!(leaves.iter().all(|&x| x <= half));
        prop_assert_eq!(deg2.iter().collect::<HashSet<_>>().len(), deg2.len());
        prop_assert!(deg2.iter().all(|&x| x > half && x <= bound));
        prop_assert!(centers.iter().all(|&x| x > bound));
    }
}
