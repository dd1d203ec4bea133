//! Machinery shared by the three constructions: a partially labeled forest,
//! alternating leg labeling, and the greedy reserved-leg process.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{LegRef, SpiderForest};
use crate::interval::LabelPool;
use crate::sums::Labeling;

pub(crate) struct Partial<'a> {
    forest: &'a SpiderForest,
    labels: Vec<Option<i64>>,
    /// Sum of the center-incident labels assigned so far, per spider (0-based).
    center: Vec<i64>,
}

impl<'a> Partial<'a> {
    pub(crate) fn new(forest: &'a SpiderForest) -> Self {
        Partial { forest, labels: vec![None; forest.edge_count()], center: vec![0; forest.spider_count()] }
    }

    pub(crate) fn forest(&self) -> &'a SpiderForest {
        self.forest
    }

    /// Partial center sum of spider `spider` (1-based).
    pub(crate) fn center_sum(&self, spider: usize) -> i64 {
        self.center[spider - 1]
    }

    fn set(&mut self, edge: usize, label: i64) -> Result<()> {
        if let Some(old) = self.labels[edge].replace(label) {
            return Err(Error::Internal(format!("{} labeled twice ({old}, then {label})", self.forest.edge_ref(edge))));
        }
        Ok(())
    }

    /// Labels `leg` leaf to center: odd positions from `odd`, even positions
    /// from `even`, both in the given order. With `center` set, the
    /// center-incident edge takes that label instead. Every supplied label
    /// must be used.
    pub(crate) fn label_leg(&mut self, leg: LegRef, odd: &[i64], even: &[i64], center: Option<i64>) -> Result<()> {
        let edges = self.forest.leg_edges(leg);
        let len = edges.len();
        let (mut oi, mut ei) = (0, 0);
        for (p, e) in (1..=len).zip(edges) {
            let label = match center {
                Some(c) if p == len => c,
                _ if p % 2 == 1 => {
                    oi += 1;
                    *odd.get(oi - 1).ok_or_else(|| short(leg, "odd"))?
                }
                _ => {
                    ei += 1;
                    *even.get(ei - 1).ok_or_else(|| short(leg, "even"))?
                }
            };
            self.set(e, label)?;
            if p == len {
                self.center[leg.spider - 1] += label;
            }
        }
        if oi != odd.len() || ei != even.len() {
            return Err(Error::Internal(format!("{leg}: unused labels supplied")));
        }
        Ok(())
    }

    /// A single edge, for 1-legs.
    pub(crate) fn label_one_leg(&mut self, leg: LegRef, label: i64) -> Result<()> {
        self.label_leg(leg, &[label], &[], None)
    }

    pub(crate) fn finish(self, k: i64) -> Result<Labeling> {
        let forest = self.forest;
        let labels = self
            .labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Internal(format!("{} left unlabeled", forest.edge_ref(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Labeling::new(k, labels))
    }
}

fn short(leg: LegRef, which: &str) -> Error {
    Error::Internal(format!("{leg}: too few {which}-position labels"))
}

/// Steps 1-2 for one leg: the odd positions take the next `ceil(len/2)`
/// labels of `odd_pool`, the even positions the next `floor(len/2)` of
/// `even_pool`, both from the bottom.
pub(crate) fn label_even_leg(
    partial: &mut Partial<'_>,
    leg: LegRef,
    odd_pool: &mut LabelPool,
    even_pool: &mut LabelPool,
) -> Result<()> {
    let len = partial.forest().leg_len(leg);
    let odd = odd_pool.take_low(len.div_ceil(2))?;
    let even = even_pool.take_low(len / 2)?;
    partial.label_leg(leg, &odd, &even, None)
}

/// Steps 1-3 for an odd leg: pairs along the leg from `odd_pool` and
/// `even_pool`, and the center edge from `center_pool`, all from the bottom.
pub(crate) fn label_odd_leg(
    partial: &mut Partial<'_>,
    leg: LegRef,
    odd_pool: &mut LabelPool,
    even_pool: &mut LabelPool,
    center_pool: &mut LabelPool,
) -> Result<()> {
    let len = partial.forest().leg_len(leg);
    let half = (len - 1) / 2;
    let odd = odd_pool.take_low(half)?;
    let even = even_pool.take_low(half)?;
    let center = center_pool.take_low(1)?[0];
    partial.label_leg(leg, &odd, &even, Some(center))
}

/// One iteration of the reserved-leg process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Round {
    /// Spider completed in this round (1-based, input order).
    pub spider: usize,
    /// Its final center sum.
    pub center_sum: i64,
    /// Whether the reserved leg was even (the second case of the process).
    pub even_reserved: bool,
}

/// Labels the reserved legs one spider per round. Each round predicts every
/// remaining center sum using the largest unused label of `low` (odd reserved
/// leg) or `high` (even reserved leg), completes a maximizer (preferring one
/// whose reserved leg is even, then the lowest index), and gives its reserved
/// leg the largest unused labels: odd positions from `low`, even positions
/// from `high`, ascending toward the center.
pub(crate) fn label_reserved_legs(
    partial: &mut Partial<'_>,
    reserved: &[LegRef],
    low: &mut LabelPool,
    high: &mut LabelPool,
) -> Result<Vec<Round>> {
    let forest = partial.forest();
    let mut remaining: Vec<LegRef> = reserved.to_vec();
    let mut rounds = Vec::with_capacity(reserved.len());
    while !remaining.is_empty() {
        let mut best: Option<(i64, bool, usize)> = None;
        for (pos, leg) in remaining.iter().enumerate() {
            let even = forest.leg_len(*leg).is_multiple_of(2);
            let top = if even { high.max() } else { low.max() };
            let top = top.ok_or_else(|| Error::Internal(format!("no label left for the center edge of {leg}")))?;
            let predicted = partial.center_sum(leg.spider) + top;
            let better = match best {
                None => true,
                Some((v, e, _)) => predicted > v || (predicted == v && even && !e),
            };
            if better {
                best = Some((predicted, even, pos));
            }
        }
        let (predicted, even, pos) = best.expect("remaining is non-empty");
        let leg = remaining.remove(pos);
        let len = forest.leg_len(leg);
        let odd_labels = low.take_high(len.div_ceil(2))?;
        let even_labels = high.take_high(len / 2)?;
        partial.label_leg(leg, &odd_labels, &even_labels, None)?;
        let center_sum = partial.center_sum(leg.spider);
        if center_sum != predicted {
            return Err(Error::Internal(format!(
                "spider {}: predicted center sum {predicted}, got {center_sum}",
                leg.spider
            )));
        }
        rounds.push(Round { spider: leg.spider, center_sum, even_reserved: even });
    }
    Ok(rounds)
}
