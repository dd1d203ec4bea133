//! Spider forests: the data model, canonical vertex/edge addressing, the text
//! and JSON input formats, per-scheme hypothesis checks and a seeded
//! generator for test instances.
//!
//! Edges and vertices are addressed by `(spider, leg, pos)`, all 1-based.
//! Position 1 is the pendant edge (resp. the leaf) and position `len` is the
//! edge incident to the center (resp. the vertex adjacent to the center).
//! Internally every edge and vertex also has a flat 0-based index; edges are
//! laid out spider-major, leg-major, leaf to center, and each spider's
//! vertices are its leg vertices in the same order followed by its center.

use std::fmt;
use std::ops::{Range, RangeInclusive};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpiderSpec {
    legs: Vec<usize>,
}

impl SpiderSpec {
    pub fn new(legs: Vec<usize>) -> Result<Self> {
        Self::checked(legs, 1)
    }

    fn checked(legs: Vec<usize>, spider: usize) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::NoLegs { spider });
        }
        if let Some(j) = legs.iter().position(|&l| l == 0) {
            return Err(Error::ZeroLengthLeg { spider, leg: j + 1 });
        }
        Ok(SpiderSpec { legs })
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    /// Length of leg `leg` (1-based).
    pub fn leg(&self, leg: usize) -> usize {
        self.legs[leg - 1]
    }

    pub fn degree(&self) -> usize {
        self.legs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.legs.iter().sum()
    }

    /// Number of 1-legs.
    pub fn one_legs(&self) -> usize {
        self.legs.iter().filter(|&&l| l == 1).count()
    }

    /// Number of legs of length at least two.
    pub fn long_legs(&self) -> usize {
        self.legs.len() - self.one_legs()
    }

    pub fn is_star(&self) -> bool {
        self.legs.iter().all(|&l| l == 1)
    }

    /// Fewer than three legs: a path, only meaningful to the oracle.
    pub fn is_degenerate(&self) -> bool {
        self.legs.len() < 3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub spider: usize,
    pub leg: usize,
    pub pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRef {
    Leg { spider: usize, leg: usize, pos: usize },
    Center { spider: usize },
}

/// A leg of a given spider, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LegRef {
    pub spider: usize,
    pub leg: usize,
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{},{})", self.spider, self.leg, self.pos)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRef::Leg { spider, leg, pos } => write!(f, "v({spider},{leg},{pos})"),
            VertexRef::Center { spider } => write!(f, "w{spider}"),
        }
    }
}

impl fmt::Display for LegRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spider {} leg {}", self.spider, self.leg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpiderForest {
    spiders: Vec<SpiderSpec>,
    /// `leg_start[s][j]`: flat index of the pendant edge of leg `j` of spider `s` (0-based).
    leg_start: Vec<Vec<usize>>,
    /// Flat index of each spider's first edge, plus a final entry equal to `m`.
    spider_start: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ForestDoc {
    spiders: Vec<Vec<usize>>,
}

impl SpiderForest {
    pub fn new(spiders: Vec<SpiderSpec>) -> Result<Self> {
        if spiders.is_empty() {
            return Err(Error::EmptyForest);
        }
        let mut leg_start = Vec::with_capacity(spiders.len());
        let mut spider_start = Vec::with_capacity(spiders.len() + 1);
        let mut next = 0;
        for sp in &spiders {
            spider_start.push(next);
            let mut starts = Vec::with_capacity(sp.degree());
            for &len in sp.legs() {
                starts.push(next);
                next += len;
            }
            leg_start.push(starts);
        }
        spider_start.push(next);
        Ok(SpiderForest { spiders, leg_start, spider_start })
    }

    pub fn from_legs<I, L>(spiders: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<Vec<usize>>,
    {
        let specs = spiders
            .into_iter()
            .enumerate()
            .map(|(i, legs)| SpiderSpec::checked(legs.into(), i + 1))
            .collect::<Result<Vec<_>>>()?;
        Self::new(specs)
    }

    pub fn spiders(&self) -> &[SpiderSpec] {
        &self.spiders
    }

    /// Spider `spider` (1-based).
    pub fn spider(&self, spider: usize) -> &SpiderSpec {
        &self.spiders[spider - 1]
    }

    /// Number of spiders, `t`.
    pub fn spider_count(&self) -> usize {
        self.spiders.len()
    }

    /// Number of edges, `m`.
    pub fn edge_count(&self) -> usize {
        self.spider_start[self.spiders.len()]
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_count() + self.spider_count()
    }

    /// Total number of 1-legs, `s`.
    pub fn one_leg_count(&self) -> usize {
        self.spiders.iter().map(SpiderSpec::one_legs).sum()
    }

    pub fn leg_len(&self, leg: LegRef) -> usize {
        self.spider(leg.spider).leg(leg.leg)
    }

    /// All legs of the forest in input order.
    pub fn legs(&self) -> impl Iterator<Item = LegRef> + '_ {
        self.spiders
            .iter()
            .enumerate()
            .flat_map(|(s, sp)| (1..=sp.degree()).map(move |leg| LegRef { spider: s + 1, leg }))
    }

    /// Flat edge indices of a leg, leaf to center.
    pub fn leg_edges(&self, leg: LegRef) -> Range<usize> {
        let start = self.leg_start[leg.spider - 1][leg.leg - 1];
        start..start + self.leg_len(leg)
    }

    /// Flat index of the edge of `leg` incident to the center.
    pub fn center_edge(&self, leg: LegRef) -> usize {
        self.leg_edges(leg).end - 1
    }

    pub fn edge_index(&self, e: EdgeRef) -> Option<usize> {
        let sp = self.spiders.get(e.spider.checked_sub(1)?)?;
        let len = *sp.legs().get(e.leg.checked_sub(1)?)?;
        if e.pos == 0 || e.pos > len {
            return None;
        }
        Some(self.leg_start[e.spider - 1][e.leg - 1] + e.pos - 1)
    }

    pub fn edge_ref(&self, idx: usize) -> EdgeRef {
        assert!(idx < self.edge_count(), "edge index {idx} out of range");
        let s = self.spider_start.partition_point(|&st| st <= idx) - 1;
        let starts = &self.leg_start[s];
        let j = starts.partition_point(|&st| st <= idx) - 1;
        EdgeRef { spider: s + 1, leg: j + 1, pos: idx - starts[j] + 1 }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edge_count()).map(|i| self.edge_ref(i))
    }

    pub fn vertex_index(&self, v: VertexRef) -> Option<usize> {
        match v {
            VertexRef::Leg { spider, leg, pos } => {
                self.edge_index(EdgeRef { spider, leg, pos }).map(|e| e + spider - 1)
            }
            VertexRef::Center { spider } => {
                if spider == 0 || spider > self.spider_count() {
                    return None;
                }
                Some(self.spider_start[spider] + spider - 1)
            }
        }
    }

    pub fn vertex_ref(&self, idx: usize) -> VertexRef {
        assert!(idx < self.vertex_count(), "vertex index {idx} out of range");
        // Spider s occupies vertex indices spider_start[s] + s ..= spider_start[s+1] + s.
        let s = (0..self.spider_count()).find(|&s| idx <= self.spider_start[s + 1] + s).expect("index checked above");
        if idx == self.spider_start[s + 1] + s {
            VertexRef::Center { spider: s + 1 }
        } else {
            let e = self.edge_ref(idx - s);
            VertexRef::Leg { spider: e.spider, leg: e.leg, pos: e.pos }
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex_ref(i))
    }

    pub fn center_index(&self, spider: usize) -> usize {
        self.spider_start[spider] + spider - 1
    }

    /// Flat vertex indices of the two ends of edge `idx`.
    pub fn edge_endpoints(&self, idx: usize) -> (usize, usize) {
        let e = self.edge_ref(idx);
        let len = self.spider(e.spider).leg(e.leg);
        let near_leaf = idx + e.spider - 1;
        let near_center = if e.pos == len { self.center_index(e.spider) } else { near_leaf + 1 };
        (near_leaf, near_center)
    }

    pub fn vertex_degree(&self, idx: usize) -> usize {
        match self.vertex_ref(idx) {
            VertexRef::Center { spider } => self.spider(spider).degree(),
            VertexRef::Leg { pos, .. } => {
                if pos == 1 {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// One `spider ...` line per spider.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for sp in &self.spiders {
            out.push_str("spider");
            for l in sp.legs() {
                out.push(' ');
                out.push_str(&l.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = ForestDoc { spiders: self.spiders.iter().map(|s| s.legs.clone()).collect() };
        serde_json::to_string(&doc).expect("forest serializes")
    }
}

impl fmt::Display for SpiderForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .spiders
            .iter()
            .map(|s| {
                let legs: Vec<String> = s.legs().iter().map(|l| l.to_string()).collect();
                format!("({})", legs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses either the line format (`spider 2 2 2`, `#` comments) or the JSON
/// format (`{"spiders": [[2,2,2]]}`); JSON is detected by a leading `{`.
pub fn parse_forest(text: &str) -> Result<SpiderForest> {
    if text.trim_start().starts_with('{') {
        let doc: ForestDoc = serde_json::from_str(text)?;
        return SpiderForest::from_legs(doc.spiders);
    }
    let mut spiders = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() != Some("spider") {
            return Err(Error::Parse { line: n + 1, msg: format!("expected `spider`, got `{line}`") });
        }
        let legs = words
            .map(|w| {
                w.parse::<usize>().map_err(|_| Error::Parse { line: n + 1, msg: format!("`{w}` is not a leg length") })
            })
            .collect::<Result<Vec<_>>>()?;
        spiders.push(SpiderSpec::checked(legs, spiders.len() + 1)?);
    }
    SpiderForest::new(spiders)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// No 1-legs, any `k >= 0`.
    A,
    /// Any spider forest, `k >= k0` (or the mirrored negative range).
    B,
    /// Every leg of length 1 or even, any `k >= 0`.
    C,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scheme::A => "A",
            Scheme::B => "B",
            Scheme::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewLegs { spider: usize, legs: usize },
    OneLeg { leg: LegRef },
    OddLongLeg { leg: LegRef, len: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewLegs { spider, legs } => {
                write!(f, "spider {spider} has {legs} legs, need at least 3")
            }
            Violation::OneLeg { leg } => write!(f, "{leg} has length 1"),
            Violation::OddLongLeg { leg, len } => write!(f, "{leg} has odd length {len} > 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub scheme: Scheme,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Hypothesis(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "scheme {}: valid", self.scheme);
        }
        write!(f, "scheme {}: invalid", self.scheme)?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

pub fn validate_for_scheme(forest: &SpiderForest, scheme: Scheme) -> ValidationReport {
    let mut violations = Vec::new();
    for (s, sp) in forest.spiders().iter().enumerate() {
        if sp.degree() < 3 {
            violations.push(Violation::TooFewLegs { spider: s + 1, legs: sp.degree() });
        }
        for (j, &len) in sp.legs().iter().enumerate() {
            let leg = LegRef { spider: s + 1, leg: j + 1 };
            match scheme {
                Scheme::A if len == 1 => violations.push(Violation::OneLeg { leg }),
                Scheme::C if len > 1 && len % 2 == 1 => violations.push(Violation::OddLongLeg { leg, len }),
                _ => {}
            }
        }
    }
    ValidationReport { scheme, violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub spiders: RangeInclusive<usize>,
    pub legs: RangeInclusive<usize>,
    pub lengths: Vec<usize>,
}

/// Draws a forest from `params`; the result depends only on `seed` and `params`.
pub fn generate_forest(seed: u64, params: &GeneratorParams) -> Result<SpiderForest> {
    if params.spiders.is_empty() || *params.spiders.start() == 0 {
        return Err(Error::Generator(format!("bad spider count range {:?}", params.spiders)));
    }
    if params.legs.is_empty() || *params.legs.start() == 0 {
        return Err(Error::Generator(format!("bad legs-per-spider range {:?}", params.legs)));
    }
    if params.lengths.is_empty() || params.lengths.contains(&0) {
        return Err(Error::Generator(format!("bad leg length menu {:?}", params.lengths)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.gen_range(params.spiders.clone());
    let spiders = (0..t)
        .map(|_| {
            let d = rng.gen_range(params.legs.clone());
            (0..d).map(|_| params.lengths[rng.gen_range(0..params.lengths.len())]).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    SpiderForest::from_legs(spiders)
}
