//! Shared helpers: fixtures, the seeded corpora, and a verifier written
//! directly from leg lengths, independent of the library's flat indexing.

#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use spiderlab::{generate_forest, parse_forest, GeneratorParams, SpiderForest};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn forest(name: &str) -> SpiderForest {
    parse_forest(&fixture(name)).unwrap()
}

pub const CORPUS_SEEDS: std::ops::Range<u64> = 0..200;
pub const SHIFTS: [i64; 4] = [0, 1, 7, 100];

pub fn params_a() -> GeneratorParams {
    GeneratorParams { spiders: 1..=4, legs: 3..=5, lengths: vec![2, 3, 4, 5] }
}

pub fn params_b() -> GeneratorParams {
    GeneratorParams { spiders: 1..=4, legs: 3..=5, lengths: vec![1, 2, 3, 4, 5] }
}

pub fn params_c() -> GeneratorParams {
    GeneratorParams { spiders: 1..=4, legs: 3..=5, lengths: vec![1, 2, 4, 6] }
}

pub fn corpus(params: &GeneratorParams) -> Vec<SpiderForest> {
    CORPUS_SEEDS.map(|seed| generate_forest(seed, params).unwrap()).collect()
}

pub fn legs_of(forest: &SpiderForest) -> Vec<Vec<usize>> {
    forest.spiders().iter().map(|s| s.legs().to_vec()).collect()
}

/// Edges as vertex pairs, in (spider, leg, position from the leaf) order.
/// Vertices are numbered as they are met: each leg's leaf and inner
/// vertices, then the spider's center.
pub fn edge_list(legs: &[Vec<usize>]) -> (usize, Vec<(usize, usize)>) {
    let mut next = 0;
    let mut edges = Vec::new();
    for spider in legs {
        let mut pending = Vec::new();
        for &len in spider {
            let path: Vec<usize> = (0..len).map(|i| next + i).collect();
            next += len;
            for p in 0..len {
                // the last edge of the leg ends at the center, numbered later
                pending.push((edges.len(), path[p], (p + 1 < len).then(|| path[p + 1])));
                edges.push((0, 0));
            }
        }
        let center = next;
        next += 1;
        for (idx, u, v) in pending {
            edges[idx] = (u, v.unwrap_or(center));
        }
    }
    (next, edges)
}

pub fn naive_sums(legs: &[Vec<usize>], labels: &[i64]) -> Vec<i64> {
    let (n, edges) = edge_list(legs);
    let mut sums = vec![0; n];
    for (&(u, v), &l) in edges.iter().zip(labels) {
        sums[u] += l;
        sums[v] += l;
    }
    sums
}

pub fn naive_antimagic(legs: &[Vec<usize>], k: i64, labels: &[i64]) -> bool {
    let m = labels.len() as i64;
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted != (k + 1..=k + m).collect::<Vec<_>>() {
        return false;
    }
    let sums = naive_sums(legs, labels);
    sums.iter().collect::<HashSet<_>>().len() == sums.len()
}

/// Steps `v` to its next permutation in lexicographic order.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Plain enumeration of all `m!` bijections in lexicographic order; returns
/// the first antimagic one.
pub fn naive_brute_force(legs: &[Vec<usize>], k: i64) -> Option<Vec<i64>> {
    let m: usize = legs.iter().flatten().sum();
    let mut labels: Vec<i64> = (k + 1..=k + m as i64).collect();
    loop {
        if naive_antimagic(legs, k, &labels) {
            return Some(labels);
        }
        if !next_permutation(&mut labels) {
            return None;
        }
    }
}

/// Every composition of `n` into parts, in lexicographic order.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every spider (at least three legs, legs ordered) with at most `max_m` edges.
pub fn all_spiders(max_m: usize) -> Vec<Vec<usize>> {
    (3..=max_m).flat_map(compositions).filter(|c| c.len() >= 3).collect()
}

/// Every forest of one or two spiders with at most `max_m` edges in total.
pub fn all_small_forests(max_m: usize) -> Vec<Vec<Vec<usize>>> {
    let spiders = all_spiders(max_m);
    let size = |s: &Vec<usize>| s.iter().sum::<usize>();
    let mut out: Vec<Vec<Vec<usize>>> = spiders.iter().map(|s| vec![s.clone()]).collect();
    for x in &spiders {
        for y in &spiders {
            if size(x) + size(y) <= max_m {
                out.push(vec![x.clone(), y.clone()]);
            }
        }
    }
    out
}
