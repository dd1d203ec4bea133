//! Edge labelings, vertex sums and the (k-shifted) antimagic check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{EdgeRef, SpiderForest, VertexRef};

/// An edge labeling with its shift `k`. Labels are indexed by flat edge index.
///
/// The bijection onto `[k+1, k+m]` is not enforced here so that broken
/// labelings can be represented and rejected by [`check_antimagic`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    k: i64,
    labels: Vec<i64>,
}

impl Labeling {
    pub fn new(k: i64, labels: Vec<i64>) -> Self {
        Labeling { k, labels }
    }

    /// Builds a labeling from addressed entries; every edge of `forest`
    /// must appear exactly once.
    pub fn from_refs<I>(forest: &SpiderForest, k: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EdgeRef, i64)>,
    {
        let mut labels = vec![None; forest.edge_count()];
        for (e, label) in entries {
            let idx =
                forest.edge_index(e).ok_or_else(|| Error::Mismatch(format!("{e} is not an edge of the forest")))?;
            if labels[idx].replace(label).is_some() {
                return Err(Error::Mismatch(format!("{e} is labeled twice")));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Mismatch(format!("{} has no label", forest.edge_ref(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Labeling { k, labels })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> i64 {
        self.labels[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Every label moved by `delta`; the shift moves with it.
    pub fn shifted(&self, delta: i64) -> Labeling {
        Labeling { k: self.k + delta, labels: self.labels.iter().map(|l| l + delta).collect() }
    }

    pub(crate) fn swap_labels(&mut self, a: i64, b: i64) -> Result<(usize, usize)> {
        let find = |x: i64| {
            self.labels.iter().position(|&l| l == x).ok_or_else(|| Error::Internal(format!("label {x} not present")))
        };
        let (ia, ib) = (find(a)?, find(b)?);
        self.labels.swap(ia, ib);
        Ok((ia, ib))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSumReport {
    /// Indexed by flat vertex index.
    pub sums: Vec<i64>,
    /// Every unordered pair of distinct vertices with equal sums.
    pub collisions: Vec<(VertexRef, VertexRef)>,
}

impl VertexSumReport {
    pub fn sum_of(&self, forest: &SpiderForest, v: VertexRef) -> Option<i64> {
        forest.vertex_index(v).map(|i| self.sums[i])
    }

    pub fn is_antimagic(&self) -> bool {
        self.collisions.is_empty()
    }
}

fn raw_sums(forest: &SpiderForest, labeling: &Labeling) -> Result<Vec<i64>> {
    if labeling.edge_count() != forest.edge_count() {
        return Err(Error::Mismatch(format!(
            "labeling has {} labels, forest has {} edges",
            labeling.edge_count(),
            forest.edge_count()
        )));
    }
    let mut sums = vec![0i64; forest.vertex_count()];
    for (e, &label) in labeling.labels().iter().enumerate() {
        let (u, v) = forest.edge_endpoints(e);
        sums[u] += label;
        sums[v] += label;
    }
    Ok(sums)
}

pub fn vertex_sums(forest: &SpiderForest, labeling: &Labeling) -> Result<VertexSumReport> {
    let sums = raw_sums(forest, labeling)?;
    let mut by_sum: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (v, &s) in sums.iter().enumerate() {
        by_sum.entry(s).or_default().push(v);
    }
    let mut collisions = Vec::new();
    for group in by_sum.values().filter(|g| g.len() > 1) {
        for (i, &u) in group.iter().enumerate() {
            for &v in &group[i + 1..] {
                collisions.push((forest.vertex_ref(u), forest.vertex_ref(v)));
            }
        }
    }
    Ok(VertexSumReport { sums, collisions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    EdgeCount { labels: usize, edges: usize },
    OutOfRange { edge: EdgeRef, label: i64 },
    Duplicate { label: i64, first: EdgeRef, second: EdgeRef },
    Collision { u: VertexRef, v: VertexRef, sum: i64 },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::EdgeCount { labels, edges } => {
                write!(f, "labeling has {labels} labels for {edges} edges")
            }
            Failure::OutOfRange { edge, label } => write!(f, "label {label} on {edge} is out of range"),
            Failure::Duplicate { label, first, second } => {
                write!(f, "label {label} used on both {first} and {second}")
            }
            Failure::Collision { u, v, sum } => write!(f, "{u} and {v} both have vertex sum {sum}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub range_ok: bool,
    pub bijection_ok: bool,
    pub sums_distinct: bool,
    /// The first failing check with a witness.
    pub failure: Option<Failure>,
}

impl Verdict {
    pub fn is_antimagic(&self) -> bool {
        self.range_ok && self.bijection_ok && self.sums_distinct
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "antimagic"),
            Some(why) => write!(f, "not antimagic: {why}"),
        }
    }
}

/// True iff the labels are exactly `[k+1, k+m]` without repeats and all
/// vertex sums are pairwise distinct.
pub fn check_antimagic(forest: &SpiderForest, labeling: &Labeling) -> Verdict {
    let m = forest.edge_count();
    if labeling.edge_count() != m {
        return Verdict {
            range_ok: false,
            bijection_ok: false,
            sums_distinct: false,
            failure: Some(Failure::EdgeCount { labels: labeling.edge_count(), edges: m }),
        };
    }
    let (lo, hi) = (labeling.k() + 1, labeling.k() + m as i64);
    let mut verdict = Verdict { range_ok: true, bijection_ok: true, sums_distinct: true, failure: None };

    let mut seen: HashMap<i64, usize> = HashMap::with_capacity(m);
    for (e, &label) in labeling.labels().iter().enumerate() {
        if !(lo..=hi).contains(&label) {
            verdict.range_ok = false;
            verdict.failure.get_or_insert(Failure::OutOfRange { edge: forest.edge_ref(e), label });
        }
        if let Some(&first) = seen.get(&label) {
            verdict.bijection_ok = false;
            verdict.failure.get_or_insert(Failure::Duplicate {
                label,
                first: forest.edge_ref(first),
                second: forest.edge_ref(e),
            });
        } else {
            seen.insert(label, e);
        }
    }

    let report = vertex_sums(forest, labeling).expect("edge count checked above");
    if let Some(&(u, v)) = report.collisions.first() {
        verdict.sums_distinct = false;
        let sum = report.sum_of(forest, u).expect("vertex of forest");
        verdict.failure.get_or_insert(Failure::Collision { u, v, sum });
    }
    verdict
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingVerdict {
    pub max_leaf: Option<i64>,
    pub min_deg2: Option<i64>,
    pub max_deg2: Option<i64>,
    pub min_center: Option<i64>,
    pub holds: bool,
}

/// Leaves below degree-2 vertices below centers, as the constructions arrange.
/// Classes that are absent are skipped.
pub fn structural_ordering_check(forest: &SpiderForest, labeling: &Labeling) -> Result<OrderingVerdict> {
    let sums = raw_sums(forest, labeling)?;
    let mut leaves = Vec::new();
    let mut deg2 = Vec::new();
    let mut centers = Vec::new();
    for (v, &s) in sums.iter().enumerate() {
        match forest.vertex_degree(v) {
            1 => leaves.push(s),
            2 => deg2.push(s),
            _ => centers.push(s),
        }
    }
    let max_leaf = leaves.iter().copied().max();
    let min_deg2 = deg2.iter().copied().min();
    let max_deg2 = deg2.iter().copied().max();
    let min_center = centers.iter().copied().min();

    let below = |a: Option<i64>, b: Option<i64>| match (a, b) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    };
    let holds = below(max_leaf, min_deg2) && below(max_deg2, min_center) && below(max_leaf, min_center);
    Ok(OrderingVerdict { max_leaf, min_deg2, max_deg2, min_center, holds })
}
