//! Labeling for spider forests without 1-legs, valid for every `k >= 0`.
//!
//! Labels `[k+1, k+m]` are cut into seven consecutive blocks:
//!
//! | block | size | used for |
//! |-------|------|----------|
//! | I1 | a  | odd-position edges of non-reserved odd legs |
//! | I2 | b  | odd-position edges of non-reserved even legs |
//! | I3 | c1 | odd-position edges of reserved legs |
//! | I4 | a  | even-position edges of non-reserved odd legs |
//! | I5 | b  | even-position edges of non-reserved even legs |
//! | I6 | c2 | even-position edges of reserved legs |
//! | I7 | n1 | center edges of non-reserved odd legs |
//!
//! Non-reserved legs are labeled first, leg after leg, from the bottom of
//! their blocks. The reserved legs are then filled from the top of I3 and I6
//! by the greedy process in [`crate::construct`], one spider per round, which
//! makes all center sums distinct.

use serde::Serialize;

use crate::construct::{label_even_leg, label_odd_leg, label_reserved_legs, Partial, Round};
use crate::error::{Error, Result};
use crate::forest::{validate_for_scheme, LegRef, Scheme, SpiderForest};
use crate::interval::{Interval, LabelPool};
use crate::sums::Labeling;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeAParams {
    pub k: i64,
    pub m: i64,
    /// Reserved leg of each spider, in spider order.
    pub reserved: Vec<LegRef>,
    /// Number of spiders whose reserved leg is odd.
    pub t_odd: usize,
    /// Non-reserved legs, odd ones first, each group in input order.
    pub arranged: Vec<LegRef>,
    pub n1: i64,
    pub a: i64,
    pub b: i64,
    pub c1: i64,
    pub c2: i64,
    pub intervals: [Interval; 7],
}

impl SchemeAParams {
    /// The degree-2 ceiling `(k+2a+b+c1) + (k+m)`: max of I4 plus max of I7.
    pub fn degree2_bound(&self) -> i64 {
        (self.k + 2 * self.a + self.b + self.c1) + (self.k + self.m)
    }
}

/// First even leg, else the first leg.
fn reserve(forest: &SpiderForest, spider: usize) -> LegRef {
    let legs = forest.spider(spider).legs();
    let j = legs.iter().position(|l| l % 2 == 0).unwrap_or(0);
    LegRef { spider, leg: j + 1 }
}

pub fn compute_params_a(forest: &SpiderForest, k: i64) -> Result<SchemeAParams> {
    validate_for_scheme(forest, Scheme::A).into_result()?;
    if k < 0 {
        return Err(Error::NegativeShift { k });
    }
    let reserved: Vec<LegRef> = (1..=forest.spider_count()).map(|s| reserve(forest, s)).collect();
    let is_odd = |leg: &LegRef| forest.leg_len(*leg) % 2 == 1;
    let t_odd = reserved.iter().filter(|l| is_odd(l)).count();

    let rest: Vec<LegRef> = forest.legs().filter(|l| !reserved.contains(l)).collect();
    let (mut arranged, even): (Vec<LegRef>, Vec<LegRef>) = rest.into_iter().partition(is_odd);
    let n1 = arranged.len() as i64;
    arranged.extend(even);

    let len = |l: &LegRef| forest.leg_len(*l) as i64;
    let a = arranged.iter().filter(|l| is_odd(l)).map(|l| (len(l) - 1) / 2).sum();
    let b = arranged.iter().filter(|l| !is_odd(l)).map(|l| len(l) / 2).sum();
    let c1 = reserved.iter().map(|l| (len(l) + 1) / 2).sum();
    let c2 = reserved.iter().map(|l| len(l) / 2).sum();

    let m = forest.edge_count() as i64;
    if m != 2 * a + 2 * b + c1 + c2 + n1 {
        return Err(Error::Internal(format!("block sizes do not add up to m = {m}")));
    }
    let intervals = Interval::consecutive(k + 1, [a, b, c1, a, b, c2, n1]);
    Ok(SchemeAParams { k, m, reserved, t_odd, arranged, n1, a, b, c1, c2, intervals })
}

/// Labeling together with the parameters and the reserved-leg rounds.
#[derive(Clone, Debug)]
pub struct SchemeAOutput {
    pub labeling: Labeling,
    pub params: SchemeAParams,
    pub rounds: Vec<Round>,
}

pub fn construct_scheme_a(forest: &SpiderForest, k: i64) -> Result<SchemeAOutput> {
    let params = compute_params_a(forest, k)?;
    let [i1, i2, i3, i4, i5, i6, i7] = params.intervals;
    let (mut p1, mut p2, mut p3) = (LabelPool::new("I1", i1), LabelPool::new("I2", i2), LabelPool::new("I3", i3));
    let (mut p4, mut p5, mut p6) = (LabelPool::new("I4", i4), LabelPool::new("I5", i5), LabelPool::new("I6", i6));
    let mut p7 = LabelPool::new("I7", i7);

    let mut partial = Partial::new(forest);
    for leg in &params.arranged {
        if forest.leg_len(*leg) % 2 == 1 {
            label_odd_leg(&mut partial, *leg, &mut p1, &mut p4, &mut p7)?;
        } else {
            label_even_leg(&mut partial, *leg, &mut p2, &mut p5)?;
        }
    }
    let rounds = label_reserved_legs(&mut partial, &params.reserved, &mut p3, &mut p6)?;
    for pool in [&p1, &p2, &p3, &p4, &p5, &p6, &p7] {
        pool.expect_exhausted()?;
    }
    let labeling = partial.finish(k)?;
    Ok(SchemeAOutput { labeling, params, rounds })
}

pub fn label_scheme_a(forest: &SpiderForest, k: i64) -> Result<Labeling> {
    construct_scheme_a(forest, k).map(|out| out.labeling)
}
