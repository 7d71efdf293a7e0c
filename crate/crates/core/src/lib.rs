//! Deterministic and randomized minimum Steiner cuts from polylogarithmically
//! many s–t max-flow calls.
//!
//! The crate is organised bottom-up: [`graph`] and [`maxflow`] supply exact
//! integer cut primitives, [`isolating`] computes all minimum isolating cuts
//! of a terminal set in `⌈lg|R|⌉ + 1` flows, [`splitters`] and [`expander`]
//! provide the derandomization and sparsification machinery, and
//! [`steiner`] assembles the cut drivers. [`oracles`] holds independent
//! baselines used for verification.
//!
//! All algorithms are generic over an unsigned integer capacity type
//! ([`Weight`]); the aliases below fix it to `u64`.

pub mod bench;
pub mod error;
pub mod expander;
pub mod gen;
pub mod graph;
pub mod isolating;
pub mod maxflow;
pub mod oracles;
pub mod scalar;
pub mod splitters;
pub mod steiner;

pub use error::{Error, Result};
pub use graph::{Cut, Edge, VertexId, VertexSet, WeightedGraph};
pub use maxflow::{Dinic, FlowMeter, MaxFlowEngine};
pub use scalar::Weight;

pub type Graph = WeightedGraph<u64>;
pub type Cut64 = graph::Cut<u64>;
pub type FlowResult64 = maxflow::FlowResult<u64>;
pub type IsolatingCuts64 = isolating::IsolatingCutResult<u64>;
pub type CutReport64 = steiner::CutReport<u64>;
pub type SteinerInstance64 = steiner::SteinerInstance<u64>;
pub type Decomposition64 = expander::ExpanderDecomposition<u64>;
