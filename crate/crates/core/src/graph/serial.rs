//! JSON form of a [`DecGraph`].
//!
//! ```json
//! {"nodes": [{"id": 0, "label": "lake", "weight": 1, "dec": null}],
//!  "edges": [{"source": 0, "target": 1, "weight": 1, "dec": null}]}
//! ```
//!
//! A contracted node's `dec` is a nested graph in the same format. A
//! contracted edge's `dec` is a list of `[source, target, weight, dec]`
//! tuples, one per lower-level edge, where the nested `dec` follows the same
//! rule. `null` marks base-level elements.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DecGraph, NodeId, Superedge, Supernode};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphWire {
    nodes: Vec<NodeWire>,
    edges: Vec<EdgeWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeWire {
    id: NodeId,
    label: String,
    weight: u64,
    dec: Option<GraphWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeWire {
    source: NodeId,
    target: NodeId,
    weight: u64,
    dec: Option<Vec<InnerEdgeWire>>,
}

#[derive(Serialize, Deserialize)]
struct InnerEdgeWire(NodeId, NodeId, u64, Option<Vec<InnerEdgeWire>>);

impl From<&DecGraph> for GraphWire {
    fn from(g: &DecGraph) -> Self {
        GraphWire {
            nodes: g
                .nodes()
                .map(|n| NodeWire {
                    id: n.id(),
                    label: n.label().to_owned(),
                    weight: n.weight(),
                    dec: (!n.is_base()).then(|| GraphWire::from(n.dec())),
                })
                .collect(),
            edges: g
                .edges()
                .map(|e| EdgeWire {
                    source: e.source(),
                    target: e.target(),
                    weight: e.weight(),
                    dec: inner_wire(e),
                })
                .collect(),
        }
    }
}

fn inner_wire(e: &Superedge) -> Option<Vec<InnerEdgeWire>> {
    (!e.is_base()).then(|| {
        e.dec()
            .iter()
            .map(|i| InnerEdgeWire(i.source(), i.target(), i.weight(), inner_wire(i)))
            .collect()
    })
}

fn edge_from_parts(source: NodeId, target: NodeId, weight: u64, dec: Option<Vec<InnerEdgeWire>>) -> Result<Superedge, crate::Error> {
    match dec {
        None => Ok(Superedge::base(source, target, weight)),
        Some(inner) => {
            let inner = inner
                .into_iter()
                .map(|InnerEdgeWire(s, t, w, d)| edge_from_parts(s, t, w, d))
                .collect::<Result<Vec<_>, _>>()?;
            let edge = Superedge::contracted(source, target, inner)?;
            if edge.weight() != weight {
                return Err(crate::Error::malformed(
                    format!("edge {source} -> {target}"),
                    format!("weight {weight} differs from payload weight {}", edge.weight()),
                ));
            }
            Ok(edge)
        }
    }
}

impl TryFrom<GraphWire> for DecGraph {
    type Error = crate::Error;

    fn try_from(wire: GraphWire) -> Result<Self, Self::Error> {
        let mut nodes = Vec::with_capacity(wire.nodes.len());
        for n in wire.nodes {
            let node = match n.dec {
                None => Supernode::base(n.id, n.label, n.weight),
                Some(dec) => {
                    let dec = DecGraph::try_from(dec)?;
                    if dec.node_count() == 0 {
                        return Err(crate::Error::malformed(
                            format!("node {}", n.id),
                            "empty payload must be encoded as null",
                        ));
                    }
                    let node = Supernode::contracted(n.id, n.label, dec);
                    if node.weight() != n.weight {
                        return Err(crate::Error::malformed(
                            format!("node {}", n.id),
                            format!("weight {} differs from payload weight {}", n.weight, node.weight()),
                        ));
                    }
                    node
                }
            };
            nodes.push(node);
        }
        let edges = wire
            .edges
            .into_iter()
            .map(|e| edge_from_parts(e.source, e.target, e.weight, e.dec))
            .collect::<Result<Vec<_>, _>>()?;
        DecGraph::from_parts(nodes, edges)
    }
}

/// JSON of one node, as it appears in the `nodes` list.
pub(super) fn node_json(n: &Supernode) -> String {
    let wire = NodeWire {
        id: n.id(),
        label: n.label().to_owned(),
        weight: n.weight(),
        dec: (!n.is_base()).then(|| GraphWire::from(n.dec())),
    };
    serde_json::to_string(&wire).expect("graph wire types always serialize")
}

/// JSON of one edge, as it appears in the `edges` list.
pub(super) fn edge_json(e: &Superedge) -> String {
    let wire = EdgeWire {
        source: e.source(),
        target: e.target(),
        weight: e.weight(),
        dec: inner_wire(e),
    };
    serde_json::to_string(&wire).expect("graph wire types always serialize")
}

/// Reassembles a graph from per-element JSON produced by [`node_json`] and
/// [`edge_json`].
pub(super) fn graph_from_elements<'a>(
    nodes: impl IntoIterator<Item = &'a str>,
    edges: impl IntoIterator<Item = &'a str>,
) -> Result<DecGraph, crate::Error> {
    let wire = GraphWire {
        nodes: nodes.into_iter().map(serde_json::from_str).collect::<Result<_, _>>()?,
        edges: edges.into_iter().map(serde_json::from_str).collect::<Result<_, _>>()?,
    };
    DecGraph::try_from(wire)
}

impl Serialize for DecGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphWire::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DecGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = GraphWire::deserialize(deserializer)?;
        DecGraph::try_from(wire).map_err(serde::de::Error::custom)
    }
}
