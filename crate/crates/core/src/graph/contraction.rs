//! Contraction checks and the decontraction operators.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::{DecGraph, EdgeKey, NodeId, Superedge, Supernode};
use crate::error::{Error, Result};

/// Whether `candidate` is a contraction of `base`: the node payloads of
/// `candidate` partition the nodes of `base`, and the non-empty edge sets of
/// those payloads together with the edge payloads partition the edges of
/// `base`. Payload elements must equal the corresponding elements of `base`.
pub fn is_contraction_of(candidate: &DecGraph, base: &DecGraph) -> bool {
    let mut seen_nodes = HashSet::with_capacity(base.node_count());
    let mut seen_edges = HashSet::with_capacity(base.edge_count());
    for alpha in candidate.nodes() {
        let block = alpha.dec();
        if block.node_count() == 0 {
            return false;
        }
        for v in block.nodes() {
            if base.node(v.id()) != Some(v) || !seen_nodes.insert(v.id()) {
                return false;
            }
        }
        for e in block.edges() {
            if base.edge(e.source(), e.target()) != Some(e) || !seen_edges.insert(e.key()) {
                return false;
            }
        }
    }
    if seen_nodes.len() != base.node_count() {
        return false;
    }
    for eps in candidate.edges() {
        if eps.dec().is_empty() {
            return false;
        }
        let (Some(src), Some(tgt)) = (candidate.node(eps.source()), candidate.node(eps.target())) else {
            return false;
        };
        for e in eps.dec() {
            if !src.dec().contains_node(e.source()) || !tgt.dec().contains_node(e.target()) {
                return false;
            }
            if base.edge(e.source(), e.target()) != Some(e) || !seen_edges.insert(e.key()) {
                return false;
            }
        }
    }
    seen_edges.len() == base.edge_count()
}

/// Recovers the graph a contraction was built from. Every node and edge of
/// `contracted` must carry a non-empty payload.
pub fn reconstruct(contracted: &DecGraph) -> Result<DecGraph> {
    if let Some(v) = contracted.nodes().find(|v| v.is_base()) {
        return Err(Error::NotAContraction(format!("node {} has an empty decontraction", v.id())));
    }
    if let Some(e) = contracted.edges().find(|e| e.is_base()) {
        return Err(Error::NotAContraction(format!(
            "edge {} -> {} has an empty decontraction",
            e.source(),
            e.target()
        )));
    }
    Ok(complete_decontraction(contracted))
}

/// Decontracts every node and edge by one level. Nodes without a payload
/// pass through unchanged, so a base-level graph is a fixed point.
pub fn complete_decontraction(g: &DecGraph) -> DecGraph {
    if g.is_base_level() {
        return g.clone();
    }
    let opened: Vec<&Supernode> = g.nodes().filter(|v| !v.is_base()).collect();
    let kept = g.nodes().filter(|v| v.is_base());
    expand(g, kept, &opened)
}

/// Replaces `v` by its payload graph. Edges incident to `v` are replaced by
/// their payload edges; where the other endpoint is still contracted the
/// payload edges are regrouped at that endpoint's granularity.
pub fn decontract_node(g: &DecGraph, v: NodeId) -> Result<DecGraph> {
    let node = g.node(v).ok_or(Error::UnknownNode(v))?;
    if node.is_base() {
        return Ok(g.clone());
    }
    let kept = g.nodes().filter(|n| n.id() != v);
    Ok(expand(g, kept, &[node]))
}

fn expand<'a>(g: &'a DecGraph, kept: impl Iterator<Item = &'a Supernode>, opened: &[&'a Supernode]) -> DecGraph {
    let mut nodes = BTreeMap::new();
    let mut anchors = Anchors::default();
    for v in kept {
        anchors.add(v);
        nodes.insert(v.id(), v.clone());
    }
    let mut edges: BTreeMap<EdgeKey, Superedge> = BTreeMap::new();
    for v in opened {
        for inner in v.dec().nodes() {
            anchors.add(inner);
            nodes.insert(inner.id(), inner.clone());
        }
        for e in v.dec().edges() {
            edges.insert(e.key(), e.clone());
        }
    }
    let mut pieces: BTreeMap<EdgeKey, Vec<Superedge>> = BTreeMap::new();
    for e in g.edges() {
        anchors.resolve(e, &mut pieces);
    }
    for (key, mut group) in pieces {
        let edge = if group.len() == 1 && group[0].key() == key {
            group.pop().expect("non-empty group")
        } else {
            group.sort_by_key(Superedge::key);
            Superedge::from_sorted(key.0, key.1, group)
        };
        let previous = edges.insert(key, edge);
        debug_assert!(previous.is_none(), "decontraction produced edge {key:?} twice");
    }
    DecGraph::assemble(nodes, edges)
}

/// Maps every id at or below a present node to that node.
#[derive(Default)]
struct Anchors {
    of: HashMap<NodeId, NodeId>,
}

impl Anchors {
    fn add(&mut self, present: &Supernode) {
        let root = present.id();
        self.of.insert(root, root);
        let mut stack: Vec<&Arc<DecGraph>> = vec![present.dec_shared()];
        while let Some(g) = stack.pop() {
            for n in g.nodes() {
                self.of.insert(n.id(), root);
                if !n.is_base() {
                    stack.push(n.dec_shared());
                }
            }
        }
    }

    /// Splits `e` into edges between present nodes. Edges whose endpoints
    /// sit below a present node are collected under that node's key.
    fn resolve(&self, e: &Superedge, pieces: &mut BTreeMap<EdgeKey, Vec<Superedge>>) {
        match (self.of.get(&e.source()), self.of.get(&e.target())) {
            (Some(&s), Some(&t)) => pieces.entry((s, t)).or_default().push(e.clone()),
            _ => {
                for inner in e.dec() {
                    self.resolve(inner, pieces);
                }
            }
        }
    }
}
