//! Decontractible graphs.
//!
//! A [`DecGraph`] is a directed graph whose nodes ([`Supernode`]) and edges
//! ([`Superedge`]) each carry the lower-level structure they stand for. A
//! supernode carries a whole graph; a superedge carries the lower-level edges
//! that cross between the two supernodes it joins. Base-level elements carry
//! nothing.
//!
//! Node ids are unique across every level reachable from a graph, so a node
//! and the nodes of its payload can sit side by side after a partial
//! decontraction without clashing.

mod base;
mod contraction;
pub mod dot;
mod serial;
mod topology;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use base::{natural_transform, BaseEdge, BaseNode, Digraph};
pub use contraction::{complete_decontraction, decontract_node, is_contraction_of, reconstruct};
pub use topology::Topology;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type EdgeKey = (NodeId, NodeId);

fn empty_dec() -> Arc<DecGraph> {
    static EMPTY: OnceLock<Arc<DecGraph>> = OnceLock::new();
    EMPTY.get_or_init(|| Arc::new(DecGraph::default())).clone()
}

#[derive(Clone, Debug)]
pub struct Supernode {
    id: NodeId,
    label: String,
    weight: u64,
    dec: Arc<DecGraph>,
}

impl Supernode {
    /// A node with no payload.
    pub fn base(id: NodeId, label: impl Into<String>, weight: u64) -> Self {
        Supernode {
            id,
            label: label.into(),
            weight,
            dec: empty_dec(),
        }
    }

    /// A node standing for `dec`. Its weight is the total weight of `dec`.
    pub fn contracted(id: NodeId, label: impl Into<String>, dec: DecGraph) -> Self {
        Self::contracted_shared(id, label, Arc::new(dec))
    }

    pub(crate) fn contracted_shared(id: NodeId, label: impl Into<String>, dec: Arc<DecGraph>) -> Self {
        let weight = dec.total_node_weight();
        Supernode {
            id,
            label: label.into(),
            weight,
            dec,
        }
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn dec(&self) -> &DecGraph {
        &self.dec
    }

    pub(crate) fn dec_shared(&self) -> &Arc<DecGraph> {
        &self.dec
    }

    pub fn is_base(&self) -> bool {
        self.dec.is_empty()
    }

    /// Whether `id` may appear as this node's end of a payload edge: a
    /// member of the payload, or the node itself when it has no payload
    /// (or after a partial decontraction left it at a coarser granularity).
    fn admits_endpoint(&self, id: NodeId) -> Option<&Supernode> {
        if id == self.id {
            Some(self)
        } else {
            self.dec.node(id)
        }
    }
}

impl PartialEq for Supernode {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.weight == other.weight
            && self.label == other.label
            && (Arc::ptr_eq(&self.dec, &other.dec) || self.dec == other.dec)
    }
}

impl Eq for Supernode {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superedge {
    source: NodeId,
    target: NodeId,
    weight: u64,
    /// Lower-level edges this edge stands for, sorted by key.
    dec: Vec<Superedge>,
}

impl Superedge {
    pub fn base(source: NodeId, target: NodeId, weight: u64) -> Self {
        Superedge {
            source,
            target,
            weight,
            dec: Vec::new(),
        }
    }

    /// An edge standing for `dec`; weight is the sum of their weights.
    /// Duplicate keys in `dec` are rejected.
    pub fn contracted(source: NodeId, target: NodeId, mut dec: Vec<Superedge>) -> Result<Self> {
        dec.sort_by_key(Superedge::key);
        if let Some(w) = dec.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::DuplicateEdge(w[0].source, w[0].target));
        }
        Ok(Self::from_sorted(source, target, dec))
    }

    pub(crate) fn from_sorted(source: NodeId, target: NodeId, dec: Vec<Superedge>) -> Self {
        let weight = dec.iter().map(|e| e.weight).sum();
        Superedge {
            source,
            target,
            weight,
            dec,
        }
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    pub fn key(&self) -> EdgeKey {
        (self.source, self.target)
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn dec(&self) -> &[Superedge] {
        &self.dec
    }

    /// The decontraction as bare `(source, target)` pairs.
    pub fn dec_pairs(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.dec.iter().map(Superedge::key)
    }

    pub fn is_base(&self) -> bool {
        self.dec.is_empty()
    }

    /// Total weight of the base transitions under this edge.
    pub fn base_weight(&self) -> u64 {
        if self.dec.is_empty() {
            self.weight
        } else {
            self.dec.iter().map(Superedge::base_weight).sum()
        }
    }
}

/// An immutable decontractible graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecGraph {
    nodes: BTreeMap<NodeId, Supernode>,
    edges: BTreeMap<EdgeKey, Superedge>,
    next_id: u64,
}

impl DecGraph {
    /// Builds a graph from its parts, checking every structural invariant:
    /// unique ids, existing endpoints, no self-loops, one edge per ordered
    /// pair, payload weights that add up, and payload edges that connect
    /// members of the right endpoints.
    pub fn from_parts(nodes: Vec<Supernode>, edges: Vec<Superedge>) -> Result<Self> {
        let mut node_map = BTreeMap::new();
        for node in nodes {
            if !node.is_base() && node.weight != node.dec.total_node_weight() {
                return Err(Error::malformed(
                    format!("node {}", node.id),
                    format!(
                        "weight {} differs from payload weight {}",
                        node.weight,
                        node.dec.total_node_weight()
                    ),
                ));
            }
            let id = node.id;
            if node_map.insert(id, node).is_some() {
                return Err(Error::DuplicateNode(id));
            }
        }
        let mut edge_map = BTreeMap::new();
        for edge in edges {
            let (s, t) = edge.key();
            if s == t {
                return Err(Error::SelfLoop(s.0));
            }
            let src = node_map.get(&s).ok_or(Error::DanglingEdge(s.0))?;
            let tgt = node_map.get(&t).ok_or(Error::DanglingEdge(t.0))?;
            check_edge(&edge, src, tgt)?;
            if edge_map.insert((s, t), edge).is_some() {
                return Err(Error::DuplicateEdge(s, t));
            }
        }
        let graph = Self::assemble(node_map, edge_map);
        graph.check_ids_disjoint()?;
        Ok(graph)
    }

    /// Trusted constructor for graphs built by this crate.
    pub(crate) fn assemble(nodes: BTreeMap<NodeId, Supernode>, edges: BTreeMap<EdgeKey, Superedge>) -> Self {
        let next_id = nodes
            .values()
            .map(|n| (n.id.0 + 1).max(n.dec.next_id))
            .max()
            .unwrap_or(0);
        DecGraph {
            nodes,
            edges,
            next_id,
        }
    }

    fn check_ids_disjoint(&self) -> Result<()> {
        // A node id may not reappear inside any payload reachable from this graph.
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<&DecGraph> = vec![self];
        while let Some(g) = stack.pop() {
            for node in g.nodes.values() {
                if !seen.insert(node.id) {
                    return Err(Error::DuplicateNode(node.id));
                }
                if !node.is_base() {
                    stack.push(&node.dec);
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &Supernode> + Clone {
        self.nodes.values()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Superedge> + Clone {
        self.edges.values()
    }

    pub fn node_ids(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn node(&self, id: NodeId) -> Option<&Supernode> {
        self.nodes.get(&id)
    }

    pub fn edge(&self, source: NodeId, target: NodeId) -> Option<&Superedge> {
        self.edges.get(&(source, target))
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    /// Smallest id not used anywhere in this graph or its payloads.
    pub fn next_id(&self) -> NodeId {
        NodeId(self.next_id)
    }

    pub fn total_node_weight(&self) -> u64 {
        self.nodes.values().map(|n| n.weight).sum()
    }

    /// Edge weight held by this graph: its own edges plus, recursively, the
    /// edges hidden inside node payloads.
    pub fn total_edge_weight(&self) -> u64 {
        let own: u64 = self.edges.values().map(|e| e.weight).sum();
        let inner: u64 = self
            .nodes
            .values()
            .filter(|n| !n.is_base())
            .map(|n| n.dec.total_edge_weight())
            .sum();
        own + inner
    }

    /// True when no node or edge carries a payload.
    pub fn is_base_level(&self) -> bool {
        self.nodes.values().all(Supernode::is_base) && self.edges.values().all(Superedge::is_base)
    }

    pub(crate) fn edge_map(&self) -> &BTreeMap<EdgeKey, Superedge> {
        &self.edges
    }

    pub fn topology(&self) -> Topology {
        Topology::of(self)
    }
}

fn check_edge(edge: &Superedge, src: &Supernode, tgt: &Supernode) -> Result<()> {
    let context = || format!("edge {} -> {}", edge.source, edge.target);
    if edge.dec.is_empty() {
        if !src.is_base() || !tgt.is_base() {
            return Err(Error::malformed(
                context(),
                "an edge touching a contracted node needs a non-empty decontraction",
            ));
        }
        return Ok(());
    }
    let sum: u64 = edge.dec.iter().map(|e| e.weight).sum();
    if sum != edge.weight {
        return Err(Error::malformed(
            context(),
            format!("weight {} differs from payload weight {}", edge.weight, sum),
        ));
    }
    for pair in edge.dec.windows(2) {
        if pair[0].key() >= pair[1].key() {
            return Err(Error::malformed(context(), "payload edges must be sorted and unique"));
        }
    }
    for inner in &edge.dec {
        if inner.key() == edge.key() {
            return Err(Error::malformed(context(), "edge cannot contain itself"));
        }
        if inner.source == inner.target {
            return Err(Error::SelfLoop(inner.source.0));
        }
        let p = src.admits_endpoint(inner.source).ok_or_else(|| {
            Error::malformed(context(), format!("payload source {} is not under {}", inner.source, src.id))
        })?;
        let q = tgt.admits_endpoint(inner.target).ok_or_else(|| {
            Error::malformed(context(), format!("payload target {} is not under {}", inner.target, tgt.id))
        })?;
        check_edge(inner, p, q)?;
    }
    Ok(())
}
