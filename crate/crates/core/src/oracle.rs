//! Exhaustive decision procedure for k-shifted antimagicness of small forests.
//!
//! Edges are assigned in flat index order, each trying the unused labels in
//! increasing order, so the first solution found is the lexicographically
//! least label sequence. With pruning on, a branch is cut as soon as two
//! vertices whose incident edges are all assigned share a sum; later edges
//! cannot change those sums, so no solution is lost.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{Scheme, SpiderForest};
use crate::scheme_a::label_scheme_a;
use crate::scheme_b::label_scheme_b_any;
use crate::scheme_c::label_scheme_c;
use crate::sums::{check_antimagic, Labeling, Verdict};

pub const DEFAULT_EDGE_BUDGET: usize = 10;
pub const HARD_EDGE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: usize,
    /// Ceiling on `budget`; [`HARD_EDGE_CAP`] unless overridden.
    pub hard_cap: usize,
    pub pruning: bool,
    /// Split the search on the label of the first edge. The verdict is the
    /// same; the witness is then any solution rather than the least one.
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_EDGE_BUDGET, hard_cap: HARD_EDGE_CAP, pruning: true, parallel: false }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: usize) -> Self {
        OracleConfig { budget, ..Self::default() }
    }

    fn check(&self, forest: &SpiderForest) -> Result<()> {
        let budget = self.budget.min(self.hard_cap);
        let m = forest.edge_count();
        if m > budget {
            return Err(Error::BudgetExceeded { m, budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub k: i64,
    pub feasible: bool,
    pub witness: Option<Labeling>,
    /// Partial assignments visited (one per label tried on an edge).
    pub nodes: u64,
    /// Complete bijections whose vertex sums were examined.
    pub bijections: u64,
}

struct Search {
    m: usize,
    k: i64,
    pruning: bool,
    ends: Vec<(usize, usize)>,
    /// Vertices whose last incident edge is the given edge.
    completes: Vec<Vec<usize>>,
    vertex_count: usize,
}

struct State {
    labels: Vec<i64>,
    used: Vec<bool>,
    sums: Vec<i64>,
    /// Sums of completed vertices, as a stack.
    done: Vec<i64>,
    nodes: u64,
    bijections: u64,
}

impl Search {
    fn new(forest: &SpiderForest, k: i64, pruning: bool) -> Self {
        let m = forest.edge_count();
        let ends: Vec<(usize, usize)> = (0..m).map(|e| forest.edge_endpoints(e)).collect();
        let mut last = vec![0usize; forest.vertex_count()];
        for (e, &(u, v)) in ends.iter().enumerate() {
            last[u] = last[u].max(e);
            last[v] = last[v].max(e);
        }
        let mut completes = vec![Vec::new(); m];
        for (v, &e) in last.iter().enumerate() {
            completes[e].push(v);
        }
        Search { m, k, pruning, ends, completes, vertex_count: forest.vertex_count() }
    }

    fn state(&self) -> State {
        State {
            labels: vec![0; self.m],
            used: vec![false; self.m],
            sums: vec![0; self.vertex_count],
            done: Vec::with_capacity(self.vertex_count),
            nodes: 0,
            bijections: 0,
        }
    }

    /// Depth-first over edges `e..m`; returns true when `st.labels` holds a solution.
    fn dfs(&self, st: &mut State, e: usize, stop: &AtomicBool) -> bool {
        if e == self.m {
            st.bijections += 1;
            if self.pruning {
                return true;
            }
            let mut sorted = st.sums.clone();
            sorted.sort_unstable();
            return sorted.windows(2).all(|w| w[0] != w[1]);
        }
        if stop.load(Ordering::Relaxed) {
            return false;
        }
        for off in 0..self.m {
            if st.used[off] {
                continue;
            }
            if self.try_label(st, e, off, stop) {
                return true;
            }
        }
        false
    }

    fn try_label(&self, st: &mut State, e: usize, off: usize, stop: &AtomicBool) -> bool {
        st.nodes += 1;
        let label = self.k + 1 + off as i64;
        let (u, v) = self.ends[e];
        st.used[off] = true;
        st.labels[e] = label;
        st.sums[u] += label;
        st.sums[v] += label;
        let mark = st.done.len();
        let mut ok = true;
        if self.pruning {
            for &w in &self.completes[e] {
                let s = st.sums[w];
                if st.done.contains(&s) {
                    ok = false;
                    break;
                }
                st.done.push(s);
            }
        }
        if ok && self.dfs(st, e + 1, stop) {
            return true;
        }
        st.done.truncate(mark);
        st.sums[u] -= label;
        st.sums[v] -= label;
        st.used[off] = false;
        false
    }
}

pub fn brute_force(forest: &SpiderForest, k: i64, budget: usize) -> Result<OracleResult> {
    brute_force_with(forest, k, &OracleConfig::with_budget(budget))
}

pub fn brute_force_with(forest: &SpiderForest, k: i64, config: &OracleConfig) -> Result<OracleResult> {
    config.check(forest)?;
    let search = Search::new(forest, k, config.pruning);
    let m = search.m;
    let stop = AtomicBool::new(false);

    if !config.parallel || m < 2 {
        let mut st = search.state();
        let feasible = search.dfs(&mut st, 0, &stop);
        let witness = feasible.then(|| Labeling::new(k, st.labels.clone()));
        return Ok(OracleResult { k, feasible, witness, nodes: st.nodes, bijections: st.bijections });
    }

    let branches: Vec<(Option<Vec<i64>>, u64, u64)> = (0..m)
        .into_par_iter()
        .map(|off| {
            let mut st = search.state();
            let found = search.try_label(&mut st, 0, off, &stop);
            if found {
                stop.store(true, Ordering::Relaxed);
            }
            (found.then(|| st.labels.clone()), st.nodes, st.bijections)
        })
        .collect();
    let nodes = branches.iter().map(|b| b.1).sum();
    let bijections = branches.iter().map(|b| b.2).sum();
    let witness = branches.into_iter().find_map(|b| b.0).map(|l| Labeling::new(k, l));
    Ok(OracleResult { k, feasible: witness.is_some(), witness, nodes, bijections })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityMap {
    /// `(k, feasible)` for every `k` in the requested range, ascending.
    pub entries: Vec<(i64, bool)>,
}

impl FeasibilityMap {
    pub fn min_feasible(&self) -> Option<i64> {
        self.entries.iter().find(|e| e.1).map(|e| e.0)
    }

    pub fn infeasible(&self) -> Vec<i64> {
        self.entries.iter().filter(|e| !e.1).map(|e| e.0).collect()
    }

    pub fn get(&self, k: i64) -> Option<bool> {
        self.entries.iter().find(|e| e.0 == k).map(|e| e.1)
    }
}

pub fn min_k(forest: &SpiderForest, k_lo: i64, k_hi: i64, config: &OracleConfig) -> Result<FeasibilityMap> {
    config.check(forest)?;
    let entries = (k_lo..=k_hi)
        .map(|k| brute_force_with(forest, k, config).map(|r| (k, r.feasible)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FeasibilityMap { entries })
}

/// Runs one of the constructions at `k`.
pub fn run_scheme(forest: &SpiderForest, k: i64, scheme: Scheme) -> Result<Labeling> {
    match scheme {
        Scheme::A => label_scheme_a(forest, k),
        Scheme::B => label_scheme_b_any(forest, k),
        Scheme::C => label_scheme_c(forest, k).map(|(l, _)| l),
    }
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub scheme: Scheme,
    pub k: i64,
    pub labeling: Labeling,
    pub verdict: Verdict,
    pub oracle: OracleResult,
}

impl CrossCheck {
    /// The construction verified and the oracle found the instance feasible.
    pub fn agree(&self) -> bool {
        self.verdict.is_antimagic() && self.oracle.feasible
    }
}

pub fn cross_check(forest: &SpiderForest, k: i64, scheme: Scheme, config: &OracleConfig) -> Result<CrossCheck> {
    config.check(forest)?;
    let labeling = run_scheme(forest, k, scheme)?;
    let verdict = check_antimagic(forest, &labeling);
    let oracle = brute_force_with(forest, k, config)?;
    Ok(CrossCheck { scheme, k, labeling, verdict, oracle })
}
