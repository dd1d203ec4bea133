//! Labeling for spider forests whose legs all have length 1 or even length,
//! valid for every `k >= 0`.
//!
//! Spiders are typed: A is the star with three legs, B a larger star, C a
//! non-star with at least two 1-legs, D everything else (at most one 1-leg,
//! hence at least two even legs). With `h = (m-s)/2` the labels split into
//! `I1 = [k+1, k+h]`, `I2` of size `s` and `I3` of size `h`. Even legs take
//! I1 on odd positions and I3 on even positions; 1-legs take I2.
//!
//! Each B/C spider keeps two 1-legs back and each D spider two even legs.
//! Once everything else is labeled the B/C block and the D block are each
//! sorted by partial center sum, D spiders get their reserved legs in that
//! order, and the `i`-th spider overall (B/C only) gets the special labels
//! `m'+2i-1` and `m'+2i` with `m' = k+(m+s)/2-t2-2t3`. Within each block the
//! center sums then grow by at least 4 per spider, so the only collisions left
//! are between a B/C spider and a D spider; those are removed by swapping
//! special labels between neighbouring B/C spiders, see [`SwitchLog`].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::construct::{label_even_leg, Partial};
use crate::error::{Error, Result};
use crate::forest::{validate_for_scheme, LegRef, Scheme, SpiderForest, VertexRef};
use crate::interval::{Interval, LabelPool};
use crate::sums::{check_antimagic, vertex_sums, Labeling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpiderType {
    A,
    B,
    C,
    D,
}

pub fn classify(forest: &SpiderForest, spider: usize) -> SpiderType {
    let sp = forest.spider(spider);
    match (sp.is_star(), sp.degree(), sp.one_legs()) {
        (true, 3, _) => SpiderType::A,
        (true, _, _) => SpiderType::B,
        (false, _, s) if s >= 2 => SpiderType::C,
        _ => SpiderType::D,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeCParams {
    pub k: i64,
    pub m: i64,
    pub s: i64,
    /// Type of each spider, in input order.
    pub types: Vec<SpiderType>,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub intervals: [Interval; 3],
    pub m_prime: i64,
    /// The legs each spider keeps back: two 1-legs for B/C, two even legs
    /// for D, none for A.
    pub reserved: Vec<Vec<LegRef>>,
    /// Partial center sum of every B/C/D spider once the non-reserved legs
    /// are labeled (`None` for A).
    pub partial_sums: Vec<Option<i64>>,
    /// Input spider index (1-based) at each position of the working order:
    /// the A block, the B/C block and the D block, the latter two sorted by
    /// partial center sum with ties broken by input index.
    pub order: Vec<usize>,
}

/// One exchange of special labels between the B/C spiders at two positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    /// Label that left `spider_a` for `spider_b`.
    pub label_a: i64,
    /// Label that left `spider_b` for `spider_a`.
    pub label_b: i64,
    /// Input spider index (1-based).
    pub spider_a: usize,
    pub spider_b: usize,
    /// Made by the lone-spider fallback rather than the neighbour pass.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fallback: bool,
}

/// Swaps applied during the repair pass, in order.
///
/// The pass walks the B/C block left to right. A spider whose center sum
/// equals some D center sum takes the next spider's smaller special label in
/// exchange for its larger one (+1 / -1). The last two B/C spiders are
/// handled together: their exchange is +1 / -1 unless that leaves either one
/// on a D sum, in which case the larger special of the last spider goes
/// instead (+2 / -2).
///
/// A single B/C spider has no neighbour to trade with. If it collides with a
/// D spider, [`RepairMode::WithFallback`] exchanges the label of one of its
/// center edges with the closest label of another spider's edge for which the
/// whole labeling verifies (ties: smaller label of the other spider first),
/// and records that swap with `fallback` set. Swaps that keep the leaf,
/// degree-2 and center sums in their bands are tried first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SwitchLog {
    pub swaps: Vec<Swap>,
}

impl SwitchLog {
    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }
}

/// Gaps between consecutive center sums before the repair pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spacing {
    /// Consecutive A-centers differ by exactly 1.
    pub a_block: bool,
    /// Last A-center to first B/C-center is at least 3 (vacuous without both).
    pub a_to_bc: bool,
    /// Consecutive B/C-centers differ by at least 4.
    pub bc_block: bool,
    /// Consecutive D-centers differ by at least 4.
    pub d_block: bool,
}

impl Spacing {
    pub fn holds(&self) -> bool {
        self.a_block && self.a_to_bc && self.bc_block && self.d_block
    }
}

struct Prepared<'a> {
    params: SchemeCParams,
    partial: Partial<'a>,
    low: LabelPool,
    high: LabelPool,
    specials: LabelPool,
}

fn prepare(forest: &SpiderForest, k: i64) -> Result<Prepared<'_>> {
    validate_for_scheme(forest, Scheme::C).into_result()?;
    if k < 0 {
        return Err(Error::NegativeShift { k });
    }
    let t = forest.spider_count();
    let m = forest.edge_count() as i64;
    let s = forest.one_leg_count() as i64;
    if (m - s) % 2 != 0 {
        return Err(Error::Internal(format!("m = {m} and s = {s} differ in parity")));
    }
    let h = (m - s) / 2;
    let types: Vec<SpiderType> = (1..=t).map(|i| classify(forest, i)).collect();
    let block = |ty: SpiderType| -> Vec<usize> { (1..=t).filter(|&i| types[i - 1] == ty).collect() };
    let (block_a, block_b, block_c, block_d) =
        (block(SpiderType::A), block(SpiderType::B), block(SpiderType::C), block(SpiderType::D));
    let t1 = block_a.len();
    let t2 = t1 + block_b.len();
    let t3 = t2 + block_c.len();
    let intervals = Interval::consecutive(k + 1, [h, s, h]);
    let top = k + (m + s) / 2;

    let mut partial = Partial::new(forest);

    // Stars: a pair summing to 2k+m+1 each, A-stars a third label.
    for (i, &spider) in block_a.iter().chain(&block_b).enumerate() {
        let i = i as i64 + 1;
        partial.label_one_leg(LegRef { spider, leg: 1 }, k + h + i)?;
        partial.label_one_leg(LegRef { spider, leg: 2 }, top + 1 - i)?;
        if i as usize <= t1 {
            partial.label_one_leg(LegRef { spider, leg: 3 }, k + h + t2 as i64 + i)?;
        }
    }

    let reserved: Vec<Vec<LegRef>> = (1..=t)
        .map(|spider| {
            let sp = forest.spider(spider);
            let legs = (1..=sp.degree()).map(|leg| LegRef { spider, leg });
            match types[spider - 1] {
                SpiderType::A => Vec::new(),
                SpiderType::B => legs.skip(2).take(2).collect(),
                SpiderType::C => legs.filter(|l| sp.leg(l.leg) == 1).take(2).collect(),
                SpiderType::D => legs.filter(|l| sp.leg(l.leg).is_multiple_of(2)).take(2).collect(),
            }
        })
        .collect();
    let is_reserved = |l: &LegRef| reserved[l.spider - 1].contains(l);

    let mut low = LabelPool::new("I1", intervals[0]);
    let mut high = LabelPool::new("I3", intervals[2]);
    for leg in forest.legs() {
        if forest.leg_len(leg).is_multiple_of(2) && !is_reserved(&leg) {
            label_even_leg(&mut partial, leg, &mut low, &mut high)?;
        }
    }

    let mut ones = LabelPool::new("I2", Interval::new(k + h + (t1 + t2) as i64 + 1, top - t2 as i64));
    for leg in forest.legs() {
        let ty = types[leg.spider - 1];
        let star_labeled = ty == SpiderType::A || (ty == SpiderType::B && leg.leg <= 2);
        if forest.leg_len(leg) == 1 && !star_labeled && !is_reserved(&leg) {
            partial.label_one_leg(leg, ones.take_low(1)?[0])?;
        }
    }

    let partial_sums: Vec<Option<i64>> =
        (1..=t).map(|i| (types[i - 1] != SpiderType::A).then(|| partial.center_sum(i))).collect();
    let sorted = |mut ids: Vec<usize>| {
        ids.sort_by_key(|&i| (partial_sums[i - 1], i));
        ids
    };
    let mut block_bc = block_b;
    block_bc.extend(block_c);
    let mut order = block_a;
    order.extend(sorted(block_bc));
    order.extend(sorted(block_d));

    let m_prime = top - t2 as i64 - 2 * t3 as i64;
    let params = SchemeCParams { k, m, s, types, t1, t2, t3, intervals, m_prime, reserved, partial_sums, order };
    Ok(Prepared { params, partial, low, high, specials: ones })
}

pub fn compute_params_c(forest: &SpiderForest, k: i64) -> Result<SchemeCParams> {
    prepare(forest, k).map(|p| p.params)
}

/// Positions (1-based, working order) of B/C spiders whose center sum equals
/// some D center sum. `center_sums` is indexed by position.
pub fn find_trouble(params: &SchemeCParams, center_sums: &[i64]) -> Vec<usize> {
    let d: HashSet<i64> = center_sums[params.t3..].iter().copied().collect();
    (params.t1 + 1..=params.t3).filter(|&i| d.contains(&center_sums[i - 1])).collect()
}

#[derive(Clone, Debug)]
pub struct SchemeCOutput {
    pub labeling: Labeling,
    pub params: SchemeCParams,
    /// Center sums by position, before the repair pass.
    pub pre_repair_sums: Vec<i64>,
    pub spacing: Spacing,
    pub switch_log: SwitchLog,
}

impl SchemeCOutput {
    /// Center sums by position after the repair pass.
    pub fn center_sums(&self, forest: &SpiderForest) -> Vec<i64> {
        center_sums(forest, &self.labeling, &self.params.order)
    }
}

fn center_sums(forest: &SpiderForest, labeling: &Labeling, order: &[usize]) -> Vec<i64> {
    order
        .iter()
        .map(|&spider| {
            let sp = forest.spider(spider);
            (1..=sp.degree()).map(|leg| labeling.label(forest.center_edge(LegRef { spider, leg }))).sum()
        })
        .collect()
}

fn spacing(params: &SchemeCParams, sums: &[i64]) -> Spacing {
    let (t1, t3) = (params.t1, params.t3);
    let gaps_ok =
        |range: std::ops::Range<usize>, ok: &dyn Fn(i64) -> bool| sums[range].windows(2).all(|w| ok(w[1] - w[0]));
    Spacing {
        a_block: gaps_ok(0..t1, &|g| g == 1),
        a_to_bc: t1 == 0 || t3 == t1 || sums[t1] - sums[t1 - 1] >= 3,
        bc_block: gaps_ok(t1..t3, &|g| g >= 4),
        d_block: gaps_ok(t3..sums.len(), &|g| g >= 4),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepairMode {
    /// Neighbour swaps only.
    NeighbourOnly,
    /// Neighbour swaps, then the lone-spider fallback.
    #[default]
    WithFallback,
}

pub fn construct_scheme_c(forest: &SpiderForest, k: i64) -> Result<SchemeCOutput> {
    construct_scheme_c_with(forest, k, RepairMode::default())
}

pub fn construct_scheme_c_with(forest: &SpiderForest, k: i64, mode: RepairMode) -> Result<SchemeCOutput> {
    let Prepared { params, mut partial, mut low, mut high, mut specials } = prepare(forest, k)?;
    let (t1, t3) = (params.t1, params.t3);

    for &spider in &params.order[t3..] {
        for &leg in &params.reserved[spider - 1] {
            label_even_leg(&mut partial, leg, &mut low, &mut high)?;
        }
    }
    for i in t1 + 1..=t3 {
        let spider = params.order[i - 1];
        let expect = [params.m_prime + 2 * i as i64 - 1, params.m_prime + 2 * i as i64];
        let got = specials.take_low(2)?;
        if got != expect {
            return Err(Error::Internal(format!("special labels {got:?}, expected {expect:?}")));
        }
        for (leg, label) in params.reserved[spider - 1].iter().zip(got) {
            partial.label_one_leg(*leg, label)?;
        }
    }
    for pool in [&low, &high, &specials] {
        pool.expect_exhausted()?;
    }
    let mut labeling = partial.finish(k)?;

    let pre_repair_sums = center_sums(forest, &labeling, &params.order);
    let spacing = spacing(&params, &pre_repair_sums);
    let mut switch_log = repair(&params, &mut labeling, pre_repair_sums.clone())?;
    if mode == RepairMode::WithFallback {
        if let Some(swap) = lone_fallback(forest, &params, &mut labeling)? {
            switch_log.swaps.push(swap);
        }
    }
    Ok(SchemeCOutput { labeling, params, pre_repair_sums, spacing, switch_log })
}

fn repair(params: &SchemeCParams, labeling: &mut Labeling, mut sums: Vec<i64>) -> Result<SwitchLog> {
    let (t1, t3) = (params.t1, params.t3);
    let d: HashSet<i64> = sums[t3..].iter().copied().collect();
    let special = |j: usize| params.m_prime + j as i64;
    let mut log = SwitchLog::default();
    // Exchange label `give` of position `i` with label `take` of position `j`.
    let mut exchange = |sums: &mut Vec<i64>, i: usize, give: i64, j: usize, take: i64| -> Result<()> {
        labeling.swap_labels(give, take)?;
        sums[i - 1] += take - give;
        sums[j - 1] += give - take;
        log.swaps.push(Swap {
            label_a: give,
            label_b: take,
            spider_a: params.order[i - 1],
            spider_b: params.order[j - 1],
            fallback: false,
        });
        Ok(())
    };

    for i in t1 + 1..=t3.saturating_sub(2) {
        if d.contains(&sums[i - 1]) {
            exchange(&mut sums, i, special(2 * i), i + 1, special(2 * i + 1))?;
        }
    }
    if t3 >= t1 + 2 {
        let (p, q) = (t3 - 1, t3);
        if d.contains(&sums[p - 1]) || d.contains(&sums[q - 1]) {
            let still_bad = d.contains(&(sums[p - 1] + 1)) || d.contains(&(sums[q - 1] - 1));
            if still_bad {
                exchange(&mut sums, p, special(2 * t3 - 2), q, special(2 * t3))?;
            } else {
                exchange(&mut sums, p, special(2 * t3 - 2), q, special(2 * t3 - 1))?;
            }
        }
    }
    Ok(log)
}

/// Leaf sums at most `k+(m+s)/2`, degree-2 sums above that and at most
/// `(k+(m-s)/2)+(k+m)`, center sums above the latter.
fn within_bounds(forest: &SpiderForest, params: &SchemeCParams, labeling: &Labeling) -> Result<bool> {
    let k = params.k;
    let half = k + (params.m + params.s) / 2;
    let bound = (k + (params.m - params.s) / 2) + (k + params.m);
    let sums = vertex_sums(forest, labeling)?.sums;
    Ok(sums.iter().enumerate().all(|(v, &x)| match (forest.vertex_ref(v), forest.vertex_degree(v)) {
        (VertexRef::Center { .. }, _) => x > bound,
        (_, 1) => x <= half,
        _ => x > half && x <= bound,
    }))
}

fn lone_fallback(forest: &SpiderForest, params: &SchemeCParams, labeling: &mut Labeling) -> Result<Option<Swap>> {
    let (t1, t3) = (params.t1, params.t3);
    if t3 != t1 + 1 {
        return Ok(None);
    }
    let sums = center_sums(forest, labeling, &params.order);
    if find_trouble(params, &sums).is_empty() {
        return Ok(None);
    }
    let lone = params.order[t3 - 1];
    let degree = forest.spider(lone).degree();
    let own: Vec<i64> =
        (1..=degree).map(|leg| labeling.label(forest.center_edge(LegRef { spider: lone, leg }))).collect();
    let mut candidates: Vec<(i64, i64, i64, usize)> = Vec::new();
    for e in 0..forest.edge_count() {
        let spider = forest.edge_ref(e).spider;
        if spider == lone {
            continue;
        }
        let x = labeling.label(e);
        for &sigma in &own {
            candidates.push(((sigma - x).abs(), x, sigma, spider));
        }
    }
    candidates.sort_unstable();
    for banded in [true, false] {
        for &(_, x, sigma, spider) in &candidates {
            labeling.swap_labels(sigma, x)?;
            if check_antimagic(forest, labeling).is_antimagic() && (!banded || within_bounds(forest, params, labeling)?)
            {
                return Ok(Some(Swap { label_a: sigma, label_b: x, spider_a: lone, spider_b: spider, fallback: true }));
            }
            labeling.swap_labels(sigma, x)?;
        }
    }
    Ok(None)
}

pub fn label_scheme_c(forest: &SpiderForest, k: i64) -> Result<(Labeling, SwitchLog)> {
    construct_scheme_c(forest, k).map(|out| (out.labeling, out.switch_log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse_forest;
    use crate::sums::structural_ordering_check;

    #[test]
    fn classification() {
        let f = parse_forest("spider 1 1 1\nspider 1 1 1 1\nspider 1 1 2 2\nspider 1 2 2 4\nspider 2 2 2").unwrap();
        let types: Vec<_> = (1..=5).map(|i| classify(&f, i)).collect();
        use SpiderType::*;
        assert_eq!(types, vec![A, B, C, D, D]);
        let p = compute_params_c(&f, 0).unwrap();
        assert_eq!((p.t1, p.t2, p.t3), (1, 2, 3));
        assert_eq!(p.reserved[3], vec![LegRef { spider: 4, leg: 2 }, LegRef { spider: 4, leg: 3 }]);
    }

    #[test]
    fn star_s3() {
        let f = parse_forest("spider 1 1 1").unwrap();
        let p = compute_params_c(&f, 0).unwrap();
        assert_eq!((p.t1, p.t2, p.t3), (1, 1, 1));
        assert_eq!(p.intervals[1], Interval::new(1, 3));
        let (l, log) = label_scheme_c(&f, 0).unwrap();
        assert_eq!(l.labels(), &[1, 3, 2]);
        assert!(log.is_empty());
        assert!(check_antimagic(&f, &l).is_antimagic());
    }

    #[test]
    fn type_c_1122() {
        let f = parse_forest("spider 1 1 2 2").unwrap();
        let p = compute_params_c(&f, 0).unwrap();
        assert_eq!((p.s, p.m), (2, 6));
        assert_eq!(p.intervals, [Interval::new(1, 2), Interval::new(3, 4), Interval::new(5, 6)]);
        assert_eq!(p.m_prime, 2);
        let (l, log) = label_scheme_c(&f, 0).unwrap();
        // legs: 1-leg, 1-leg, (1,5), (2,6)
        assert_eq!(l.labels(), &[3, 4, 1, 5, 2, 6]);
        assert!(log.is_empty());
        let o = structural_ordering_check(&f, &l).unwrap();
        assert_eq!((o.max_leaf, o.min_deg2, o.max_deg2, o.min_center), (Some(4), Some(6), Some(8), Some(18)));
    }

    #[test]
    fn no_d_spiders_no_trouble() {
        let f = parse_forest("spider 1 1 1 1\nspider 1 1 2 2\nspider 1 1 1 4").unwrap();
        let out = construct_scheme_c(&f, 0).unwrap();
        assert!(find_trouble(&out.params, &out.pre_repair_sums).is_empty());
        assert!(out.switch_log.is_empty());
    }

    #[test]
    fn rejects_odd_long_legs() {
        let f = parse_forest("spider 1 3 4").unwrap();
        assert!(matches!(compute_params_c(&f, 0), Err(Error::Hypothesis(_))));
    }
}
