//! Topological feature detection and feature-based contraction.
//!
//! Detectors return a [`FeatureSet`] bound to the graph it was computed on.
//! [`quotient_by_features`] merges nodes that belong to exactly the same
//! features into supernodes.

mod cliques;
mod cycles;
mod quotient;
mod scc;
mod scheme;
mod stars;

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::{DecGraph, NodeId, Topology};

pub use cliques::detect_cliques;
pub use cycles::{detect_simple_cycles, DEFAULT_CYCLE_LIMIT};
pub use quotient::quotient_by_features;
pub use scc::{detect_sccs, strongly_connected_components};
pub use scheme::{Contraction, ContractionScheme, SchemeSpec};
pub use stars::detect_stars;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    SimpleCycle,
    Scc,
    Star,
    Clique,
}

impl FeatureKind {
    /// Tag of the scheme that detects this kind, used in supernode labels.
    pub fn scheme_tag(self) -> &'static str {
        match self {
            FeatureKind::SimpleCycle => "simple_cycles",
            FeatureKind::Scc => "scc",
            FeatureKind::Star => "star",
            FeatureKind::Clique => "clique",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Feature {
    pub kind: FeatureKind,
    /// Sorted, distinct.
    pub members: Vec<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<NodeId>,
}

impl Feature {
    pub fn new(kind: FeatureKind, mut members: Vec<NodeId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Feature {
            kind,
            members,
            center: None,
        }
    }

    pub fn star(center: NodeId, periphery: impl IntoIterator<Item = NodeId>) -> Self {
        let mut f = Feature::new(FeatureKind::Star, periphery.into_iter().chain([center]).collect());
        f.center = Some(center);
        f
    }

    /// Nodes this feature groups together. A star merges only its periphery;
    /// the center stays on its own.
    pub fn grouped(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied().filter(move |&m| Some(m) != self.center)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSet {
    pub fingerprint: String,
    /// Set when enumeration stopped at its limit and more features may exist.
    #[serde(default)]
    pub truncated: bool,
    pub features: Vec<Feature>,
}

impl FeatureSet {
    /// Sorts and deduplicates `features` into canonical order.
    pub fn new(g: &DecGraph, mut features: Vec<Feature>, truncated: bool) -> Self {
        features.sort_unstable();
        features.dedup();
        FeatureSet {
            fingerprint: fingerprint(g),
            truncated,
            features,
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

/// Hex SHA-256 over the ids, labels and weights of `g`'s nodes and the keys
/// and weights of its edges.
pub fn fingerprint(g: &DecGraph) -> String {
    let mut h = Sha256::new();
    h.update((g.node_count() as u64).to_le_bytes());
    for n in g.nodes() {
        h.update(n.id().0.to_le_bytes());
        h.update(n.weight().to_le_bytes());
        h.update((n.label().len() as u64).to_le_bytes());
        h.update(n.label().as_bytes());
    }
    h.update((g.edge_count() as u64).to_le_bytes());
    for e in g.edges() {
        h.update(e.source().0.to_le_bytes());
        h.update(e.target().0.to_le_bytes());
        h.update(e.weight().to_le_bytes());
    }
    let mut out = String::with_capacity(64);
    for b in h.finalize().iter() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

fn ids(t: &Topology, idx: impl IntoIterator<Item = usize>) -> Vec<NodeId> {
    idx.into_iter().map(|i| t.ids[i]).collect()
}
