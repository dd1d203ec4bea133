//! Labeling for arbitrary spider forests at large enough shifts.
//!
//! For `k >= k0` the labels `[k+1, k+m]` are cut into nine consecutive blocks
//! I1..I9 of sizes `a, b, q, c1, 2α+β, a, b, c2, n1-q-(2α+β)`. Spiders with
//! no long legs (α of them) give two non-reserved 1-legs to a collected list,
//! spiders with one long leg (β) give one; collected legs share I5 so that each
//! α-spider's pair sums to the same constant. The other non-reserved 1-legs
//! take I3, the long odd legs take I1/I6/I9, even legs I2/I7, and reserved
//! legs are completed by the greedy process over I4/I8.
//!
//! Negating every label of a `k`-shifted antimagic labeling gives a
//! `(-k-m-1)`-shifted one, which covers `k <= -(m+k0+1)`.

use serde::Serialize;

use crate::construct::{label_even_leg, label_odd_leg, label_reserved_legs, Partial, Round};
use crate::error::{Error, Result};
use crate::forest::{validate_for_scheme, LegRef, Scheme, SpiderForest};
use crate::interval::{Interval, LabelPool};
use crate::sums::Labeling;

/// The shift-independent part of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeBLayout {
    pub m: i64,
    /// 1-legs per spider.
    pub s_i: Vec<usize>,
    /// Legs of length >= 2 per spider.
    pub r_i: Vec<usize>,
    pub s: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub reserved: Vec<LegRef>,
    pub t_odd: usize,
    /// Collected 1-legs: positions `u` and `alpha + u` belong to the same
    /// spider without long legs, then one leg per spider with one long leg.
    pub collected: Vec<LegRef>,
    /// Remaining legs: 1-legs, then odd legs of length >= 3, then even legs.
    pub arranged: Vec<LegRef>,
    pub n1: i64,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub c1: i64,
    pub c2: i64,
    pub k0: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeBParams {
    pub k: i64,
    #[serde(flatten)]
    pub layout: SchemeBLayout,
    pub intervals: [Interval; 9],
}

impl SchemeBParams {
    /// `(k+2a+b+q+c1+(2α+β)) + (k+m)`: max of I6 plus max of I9.
    pub fn degree2_bound(&self) -> i64 {
        let l = &self.layout;
        (self.k + 2 * l.a + l.b + l.q + l.c1 + 2 * l.alpha + l.beta) + (self.k + l.m)
    }
}

/// For at most two long legs, the first 1-leg. Otherwise the first even leg,
/// else the first odd leg of length at least 3.
fn reserve(forest: &SpiderForest, spider: usize) -> Result<LegRef> {
    let sp = forest.spider(spider);
    let legs = sp.legs();
    let j = if sp.long_legs() <= 2 {
        legs.iter().position(|&l| l == 1)
    } else {
        legs.iter().position(|l| l % 2 == 0).or_else(|| legs.iter().position(|&l| l >= 3))
    };
    j.map(|j| LegRef { spider, leg: j + 1 })
        .ok_or_else(|| Error::Internal(format!("spider {spider} has no reservable leg")))
}

pub fn layout_b(forest: &SpiderForest) -> Result<SchemeBLayout> {
    validate_for_scheme(forest, Scheme::B).into_result()?;
    let t = forest.spider_count();
    let s_i: Vec<usize> = forest.spiders().iter().map(|s| s.one_legs()).collect();
    let r_i: Vec<usize> = forest.spiders().iter().map(|s| s.long_legs()).collect();
    let count = |r: usize| r_i.iter().filter(|&&x| x == r).count() as i64;
    let (alpha, beta, gamma) = (count(0), count(1), count(2));

    let reserved = (1..=t).map(|s| reserve(forest, s)).collect::<Result<Vec<_>>>()?;
    let len = |l: &LegRef| forest.leg_len(*l) as i64;
    let t_odd = reserved.iter().filter(|l| len(l) % 2 == 1).count();

    // Unreserved 1-legs of a spider, in leg order.
    let spare_one_legs = |spider: usize| -> Vec<LegRef> {
        let sp = forest.spider(spider);
        (1..=sp.degree())
            .map(|leg| LegRef { spider, leg })
            .filter(|l| sp.leg(l.leg) == 1 && *l != reserved[spider - 1])
            .collect()
    };
    let mut first_of_pair = Vec::new();
    let mut second_of_pair = Vec::new();
    let mut singles = Vec::new();
    for spider in 1..=t {
        match r_i[spider - 1] {
            0 => {
                let spare = spare_one_legs(spider);
                first_of_pair.push(spare[0]);
                second_of_pair.push(spare[1]);
            }
            1 => singles.push(spare_one_legs(spider)[0]),
            _ => {}
        }
    }
    let mut collected = first_of_pair;
    collected.extend(second_of_pair);
    collected.extend(singles);

    let rest: Vec<LegRef> = forest.legs().filter(|l| !reserved.contains(l) && !collected.contains(l)).collect();
    let mut arranged: Vec<LegRef> = rest.iter().copied().filter(|l| len(l) == 1).collect();
    let q = arranged.len() as i64;
    arranged.extend(rest.iter().copied().filter(|l| len(l) >= 3 && len(l) % 2 == 1));
    let n1 = collected.len() as i64 + arranged.len() as i64;
    arranged.extend(rest.iter().copied().filter(|l| len(l) % 2 == 0));

    let a: i64 = arranged.iter().filter(|l| len(l) % 2 == 1).map(|l| (len(l) - 1) / 2).sum();
    let b = arranged.iter().filter(|l| len(l) % 2 == 0).map(|l| len(l) / 2).sum();
    let c1 = reserved.iter().map(|l| (len(l) + 1) / 2).sum();
    let c2: i64 = reserved.iter().map(|l| len(l) / 2).sum();

    let s = forest.one_leg_count() as i64;
    let m = forest.edge_count() as i64;
    if q != s - (3 * alpha + 2 * beta + gamma) {
        return Err(Error::Internal(format!("q = {q} disagrees with s - (3α+2β+γ)")));
    }
    if m != 2 * a + 2 * b + c1 + c2 + n1 {
        return Err(Error::Internal(format!("block sizes do not add up to m = {m}")));
    }
    let k0: i64 = (n1 + a + c2 - 2 * q).max(1);
    if k0 >= m {
        return Err(Error::Internal(format!("k0 = {k0} is not below m = {m}")));
    }
    Ok(SchemeBLayout {
        m,
        s_i,
        r_i,
        s,
        alpha,
        beta,
        gamma,
        reserved,
        t_odd,
        collected,
        arranged,
        n1,
        a,
        b,
        q,
        c1,
        c2,
        k0,
    })
}

/// Smallest shift the construction is guaranteed for: `max(1, n1+a+c2-2q)`.
pub fn compute_k0(forest: &SpiderForest) -> Result<i64> {
    layout_b(forest).map(|l| l.k0)
}

pub fn compute_params_b(forest: &SpiderForest, k: i64) -> Result<SchemeBParams> {
    let layout = layout_b(forest)?;
    if k < layout.k0 {
        return Err(Error::BelowThreshold { k, k0: layout.k0 });
    }
    let l = &layout;
    let collected = 2 * l.alpha + l.beta;
    let intervals =
        Interval::consecutive(k + 1, [l.a, l.b, l.q, l.c1, collected, l.a, l.b, l.c2, l.n1 - l.q - collected]);
    Ok(SchemeBParams { k, layout, intervals })
}

#[derive(Clone, Debug)]
pub struct SchemeBOutput {
    pub labeling: Labeling,
    pub params: SchemeBParams,
    pub rounds: Vec<Round>,
}

pub fn construct_scheme_b(forest: &SpiderForest, k: i64) -> Result<SchemeBOutput> {
    let params = compute_params_b(forest, k)?;
    let l = &params.layout;
    let [i1, i2, i3, i4, i5, i6, i7, i8, i9] = params.intervals;
    let mut partial = Partial::new(forest);

    // Collected pairs sum to the same value; singles fill the middle of I5.
    let (alpha, beta) = (l.alpha as usize, l.beta as usize);
    let base = i5.lo - 1;
    for u in 1..=alpha {
        partial.label_one_leg(l.collected[u - 1], base + u as i64)?;
        partial.label_one_leg(l.collected[alpha + u - 1], base + i5.len() + 1 - u as i64)?;
    }
    for v in 1..=beta {
        partial.label_one_leg(l.collected[2 * alpha + v - 1], base + (alpha + v) as i64)?;
    }

    let (mut p1, mut p2, mut p3) = (LabelPool::new("I1", i1), LabelPool::new("I2", i2), LabelPool::new("I3", i3));
    let (mut p4, mut p6, mut p7) = (LabelPool::new("I4", i4), LabelPool::new("I6", i6), LabelPool::new("I7", i7));
    let (mut p8, mut p9) = (LabelPool::new("I8", i8), LabelPool::new("I9", i9));
    for leg in &l.arranged {
        match forest.leg_len(*leg) {
            1 => partial.label_one_leg(*leg, p3.take_low(1)?[0])?,
            len if len % 2 == 1 => label_odd_leg(&mut partial, *leg, &mut p1, &mut p6, &mut p9)?,
            _ => label_even_leg(&mut partial, *leg, &mut p2, &mut p7)?,
        }
    }
    let rounds = label_reserved_legs(&mut partial, &l.reserved, &mut p4, &mut p8)?;
    for pool in [&p1, &p2, &p3, &p4, &p6, &p7, &p8, &p9] {
        pool.expect_exhausted()?;
    }
    let labeling = partial.finish(k)?;
    Ok(SchemeBOutput { labeling, params, rounds })
}

pub fn label_scheme_b(forest: &SpiderForest, k: i64) -> Result<Labeling> {
    construct_scheme_b(forest, k).map(|out| out.labeling)
}

/// Covers both ranges: `k >= k0` directly, `k <= -(m+k0+1)` by negating the
/// labeling at shift `-k-m-1`.
pub fn label_scheme_b_any(forest: &SpiderForest, k: i64) -> Result<Labeling> {
    let m = forest.edge_count() as i64;
    let k0 = compute_k0(forest)?;
    if k >= k0 {
        label_scheme_b(forest, k)
    } else if k <= -(m + k0 + 1) {
        let mirrored = label_scheme_b(forest, -k - m - 1)?;
        Ok(mirror_negate(&mirrored, forest.edge_count()))
    } else {
        Err(Error::BelowThreshold { k, k0 })
    }
}

/// `f'(e) = -f(e)`: a `k`-shifted labeling becomes `(-k-m-1)`-shifted.
pub fn mirror_negate(labeling: &Labeling, m: usize) -> Labeling {
    let k = -labeling.k() - m as i64 - 1;
    Labeling::new(k, labeling.labels().iter().map(|l| -l).collect())
}
