//! Labeling JSON documents and Graphviz DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::forest::{EdgeRef, SpiderForest};
use crate::scheme_c::Swap;
use crate::sums::{vertex_sums, Labeling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub spider: usize,
    pub leg: usize,
    pub pos: usize,
    pub label: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDoc {
    pub k: i64,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repairs: Vec<Swap>,
}

impl LabelingDoc {
    pub fn new(forest: &SpiderForest, labeling: &Labeling, repairs: &[Swap]) -> Self {
        let edges = forest
            .edges()
            .zip(labeling.labels())
            .map(|(e, &label)| EdgeEntry { spider: e.spider, leg: e.leg, pos: e.pos, label })
            .collect();
        LabelingDoc { k: labeling.k(), edges, repairs: repairs.to_vec() }
    }

    pub fn to_labeling(&self, forest: &SpiderForest) -> Result<Labeling> {
        let entries = self.edges.iter().map(|e| (EdgeRef { spider: e.spider, leg: e.leg, pos: e.pos }, e.label));
        Labeling::from_refs(forest, self.k, entries)
    }
}

pub fn labeling_to_json(forest: &SpiderForest, labeling: &Labeling, repairs: &[Swap]) -> String {
    let doc = LabelingDoc::new(forest, labeling, repairs);
    serde_json::to_string_pretty(&doc).expect("labeling serializes")
}

pub fn parse_labeling(forest: &SpiderForest, text: &str) -> Result<(Labeling, Vec<Swap>)> {
    let doc: LabelingDoc = serde_json::from_str(text)?;
    let labeling = doc.to_labeling(forest)?;
    Ok((labeling, doc.repairs))
}

/// One undirected graph; edges carry `label`, vertices carry their sum as `xlabel`.
pub fn to_dot(forest: &SpiderForest, labeling: &Labeling) -> Result<String> {
    let report = vertex_sums(forest, labeling)?;
    let mut out = String::from("graph spider_forest {\n");
    if !report.is_antimagic() {
        out.push_str("  // vertex sums collide\n");
    }
    for (i, v) in forest.vertices().enumerate() {
        writeln!(out, "  n{i} [label=\"{v}\", xlabel=\"{}\"];", report.sums[i]).expect("string write");
    }
    for e in 0..forest.edge_count() {
        let (u, v) = forest.edge_endpoints(e);
        writeln!(out, "  n{u} -- n{v} [label=\"{}\"];", labeling.label(e)).expect("string write");
    }
    out.push_str("}\n");
    Ok(out)
}
