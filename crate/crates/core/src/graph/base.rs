use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DecGraph, NodeId, Superedge, Supernode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseNode {
    pub label: String,
    pub weight: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseEdge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
}

/// A plain directed weighted graph. Nodes are indexed by insertion order;
/// adding an edge that already exists accumulates its weight.
///
/// Self-loops can be stored here so that malformed inputs are reported by
/// [`natural_transform`] rather than silently dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphWire", into = "DigraphWire")]
pub struct Digraph {
    nodes: Vec<BaseNode>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>, weight: u64) -> usize {
        self.nodes.push(BaseNode {
            label: label.into(),
            weight,
        });
        self.nodes.len() - 1
    }

    /// # Panics
    /// If either endpoint is not a node index.
    pub fn add_edge(&mut self, source: usize, target: usize, weight: u64) {
        assert!(
            source < self.nodes.len() && target < self.nodes.len(),
            "edge endpoint out of range"
        );
        *self.edges.entry((source, target)).or_insert(0) += weight;
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[BaseNode] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = BaseEdge> + '_ {
        self.edges.iter().map(|(&(source, target), &weight)| BaseEdge {
            source,
            target,
            weight,
        })
    }

    pub fn edge_weight(&self, source: usize, target: usize) -> Option<u64> {
        self.edges.get(&(source, target)).copied()
    }

    pub fn total_weight(&self) -> u64 {
        self.nodes.iter().map(|n| n.weight).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphWire {
    nodes: Vec<BaseNode>,
    edges: Vec<BaseEdge>,
}

impl TryFrom<DigraphWire> for Digraph {
    type Error = Error;

    fn try_from(wire: DigraphWire) -> Result<Self> {
        let mut g = Digraph {
            nodes: wire.nodes,
            edges: BTreeMap::new(),
        };
        for e in wire.edges {
            for end in [e.source, e.target] {
                if end >= g.nodes.len() {
                    return Err(Error::DanglingEdge(end as u64));
                }
            }
            g.add_edge(e.source, e.target, e.weight);
        }
        Ok(g)
    }
}

impl From<Digraph> for DigraphWire {
    fn from(g: Digraph) -> Self {
        let edges = g.edges().collect();
        DigraphWire {
            nodes: g.nodes,
            edges,
        }
    }
}

/// Lifts a plain graph to an isomorphic decontractible graph with empty
/// payloads. Node `i` receives id `i`.
pub fn natural_transform(g: &Digraph) -> Result<DecGraph> {
    let nodes = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let id = NodeId(i as u64);
            (id, Supernode::base(id, n.label.clone(), n.weight))
        })
        .collect();
    let mut edges = BTreeMap::new();
    for (&(s, t), &w) in &g.edges {
        if s == t {
            return Err(Error::SelfLoop(s as u64));
        }
        let (s, t) = (NodeId(s as u64), NodeId(t as u64));
        edges.insert((s, t), Superedge::base(s, t, w));
    }
    Ok(DecGraph::assemble(nodes, edges))
}
