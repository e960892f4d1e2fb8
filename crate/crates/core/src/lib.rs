//! Multilevel decontractible graphs.
//!
//! A base graph built from text is lifted into a [`DecGraph`] and then
//! contracted level by level by feature-based [`ContractionScheme`]s. Every
//! level keeps the structure it abstracts, so any supernode can be traced
//! back to the base nodes it stands for. [`metrics`] measures each level.

pub mod cli;
pub mod error;
pub mod features;
pub mod graph;
pub mod metrics;
pub mod multilevel;
pub mod textpipe;

pub use error::{Error, Result};
pub use features::{ContractionScheme, Feature, FeatureKind, FeatureSet};
pub use graph::{DecGraph, Digraph, NodeId, Superedge, Supernode};
pub use metrics::{LemmaBudget, LevelMetrics};
pub use multilevel::MultilevelGraph;
