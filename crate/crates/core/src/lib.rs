//! Constructive k-shifted antimagic edge labelings of spider forests.
//!
//! A labeling of a graph with `m` edges is a bijection from the edges onto
//! `[k+1, k+m]`; it is antimagic when all vertex sums (the sum of the labels
//! on incident edges) are distinct. Three constructions are provided:
//!
//! - [`scheme_a`]: forests with no 1-legs, every `k >= 0`;
//! - [`scheme_b`]: any spider forest, every `k >= k0` and, by negation,
//!   every `k <= -(m+k0+1)`;
//! - [`scheme_c`]: forests whose legs all have length 1 or even length,
//!   every `k >= 0`.
//!
//! [`sums`] verifies labelings and [`oracle`] decides small instances by
//! exhaustive search.

pub mod cli;
mod construct;
pub mod error;
pub mod export;
pub mod forest;
pub mod interval;
pub mod oracle;
pub mod scheme_a;
pub mod scheme_b;
pub mod scheme_c;
pub mod sums;

pub use construct::Round;
pub use error::{Error, Result};
pub use forest::{
    generate_forest, parse_forest, validate_for_scheme, EdgeRef, GeneratorParams, LegRef, Scheme, SpiderForest,
    SpiderSpec, ValidationReport, VertexRef,
};
pub use interval::Interval;
pub use sums::{check_antimagic, structural_ordering_check, vertex_sums, Labeling, Verdict};
