mod common;

use common::*;
use proptest::prelude::*;
use spiderlab::oracle::{brute_force, cross_check, OracleConfig};
use spiderlab::scheme_b::{
    compute_k0, compute_params_b, construct_scheme_b, label_scheme_b, label_scheme_b_any, layout_b, mirror_negate,
};
use spiderlab::*;

fn b_forest() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(1usize..=6, 3..=6), 1..=4)
}

#[test]
fn spider_122_params() {
    let f = forest("spider_122.txt");
    assert_eq!(compute_k0(&f).unwrap(), 1);
    let p = compute_params_b(&f, 1).unwrap();
    let iv = p.intervals;
    assert_eq!(iv[1], Interval::new(2, 3));
    assert_eq!(iv[3].len(), 1);
    assert_eq!(iv[6].len(), 2);
    let total: i64 = iv.iter().map(Interval::len).sum();
    assert_eq!(total, 5);
    let l = label_scheme_b(&f, 1).unwrap();
    assert!(naive_antimagic(&legs_of(&f), 1, l.labels()));
    assert!(brute_force(&f, 1, 10).unwrap().feasible);
    let neg = mirror_negate(&l, 5);
    assert_eq!(neg.k(), -7);
    assert!(check_antimagic(&f, &neg).is_antimagic());
}

#[test]
fn star_collected_pair() {
    // S3: legs 2 and 3 are the collected pair, leg 1 the reserved 1-leg
    let f = forest("s3.txt");
    let out = construct_scheme_b(&f, 2).unwrap();
    assert_eq!(out.params.layout.collected, vec![LegRef { spider: 1, leg: 2 }, LegRef { spider: 1, leg: 3 }]);
    assert_eq!(out.labeling.labels(), &[3, 4, 5]);
    let c = cross_check(&f, 2, Scheme::B, &OracleConfig::default()).unwrap();
    assert!(c.agree());
}

#[test]
fn two_stars_at_k0() {
    let f = parse_forest("spider 1 1 1\nspider 1 1 1").unwrap();
    let k0 = compute_k0(&f).unwrap();
    let c = cross_check(&f, k0, Scheme::B, &OracleConfig::default()).unwrap();
    assert!(c.agree(), "k0={k0}");
}

#[test]
fn threshold_and_mirror_range() {
    let f = forest("s3.txt");
    let (k0, m) = (2, 3);
    assert!(matches!(label_scheme_b(&f, k0 - 1), Err(Error::BelowThreshold { k: 1, k0: 2 })));
    for k in [-(m + k0 + 1), -(m + k0 + 1) - 5] {
        let l = label_scheme_b_any(&f, k).unwrap();
        assert_eq!(l.k(), k);
        assert!(check_antimagic(&f, &l).is_antimagic());
    }
    assert!(matches!(label_scheme_b_any(&f, -(m + k0)), Err(Error::BelowThreshold { .. })));
}

#[test]
fn four_spiders_intervals_cover_m() {
    let f = forest("four_spiders.txt");
    let k0 = compute_k0(&f).unwrap();
    let p = compute_params_b(&f, k0).unwrap();
    assert_eq!(p.intervals.iter().map(Interval::len).sum::<i64>(), 59);
    assert!(check_antimagic(&f, &label_scheme_b(&f, k0).unwrap()).is_antimagic());
}

#[test]
fn double_negation_is_identity() {
    let l = Labeling::new(0, vec![1, 2, 3]);
    let n = mirror_negate(&l, 3);
    assert_eq!((n.k(), n.labels()), (-4, &[-1, -2, -3][..]));
    assert_eq!(mirror_negate(&n, 3), l);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn layout_identities(legs in b_forest()) {
        let f = SpiderForest::from_legs(legs).unwrap();
        let l = layout_b(&f).unwrap();
        prop_assert!(l.q >= 0);
        prop_assert_eq!(l.q, l.s - (3 * l.alpha + 2 * l.beta + l.gamma));
        prop_assert_eq!(l.m, 2 * l.a + 2 * l.b + l.c1 + l.c2 + l.n1);
        prop_assert!(l.n1 - l.q - (2 * l.alpha + l.beta) >= 0);
        prop_assert!(1 <= l.k0 && l.k0 < l.m);
        prop_assert_eq!(l.collected.len() as i64, 2 * l.alpha + l.beta);
        let a = l.alpha as usize;
        for i in 0..a {
            prop_assert_eq!(l.collected[i].spider, l.collected[i + a].spider);
        }
    }

    #[test]
    fn labels_are_antimagic_above_k0(legs in b_forest(), extra in 0i64..40) {
        let f = SpiderForest::from_legs(legs.clone()).unwrap();
        let k = compute_k0(&f).unwrap() + extra;
        let out = construct_scheme_b(&f, k).unwrap();
        prop_assert!(naive_antimagic(&legs, k, out.labeling.labels()));
        let o = structural_ordering_check(&f, &out.labeling).unwrap();
        prop_assert!(o.holds);
        let bound = out.params.degree2_bound();
        prop_assert!(o.max_deg2.is_none_or(|d| d <= bound));
        prop_assert!(o.min_center.unwrap() > bound);
        for w in out.rounds.windows(2) {
            prop_assert!(w[0].center_sum > w[1].center_sum);
        }
    }

    #[test]
    fn mirror_is_antimagic_below_the_gap(legs in b_forest(), extra in 0i64..40) {
        let f = SpiderForest::from_legs(legs.clone()).unwrap();
        let m = f.edge_count() as i64;
        let k = -(m + compute_k0(&f).unwrap() + 1) - extra;
        let l = label_scheme_b_any(&f, k).unwrap();
        prop_assert_eq!(l.k(), k);
        prop_assert!(naive_antimagic(&legs, k, l.labels()));
    }
}
