use std::collections::{BTreeMap, HashMap};

use super::{fingerprint, FeatureSet};
use crate::error::{Error, Result};
use crate::graph::{DecGraph, EdgeKey, NodeId, Superedge, Supernode};

/// Contracts `g` by feature membership: nodes that lie in exactly the same
/// non-empty set of features share a supernode, every other node gets a
/// supernode of its own. Each supernode holds the subgraph induced by its
/// class; each pair of classes joined by at least one edge gets one
/// superedge holding all the crossing edges.
pub fn quotient_by_features(g: &DecGraph, q: &FeatureSet) -> Result<DecGraph> {
    let actual = fingerprint(g);
    if actual != q.fingerprint {
        return Err(Error::FingerprintMismatch {
            expected: q.fingerprint.clone(),
            actual,
        });
    }
    Ok(quotient(g, q))
}

pub(crate) fn quotient(g: &DecGraph, q: &FeatureSet) -> DecGraph {
    let classes = partition(g, q);
    let base_id = g.next_id().0;
    let mut class_of: HashMap<NodeId, NodeId> = HashMap::with_capacity(g.node_count());
    for (i, members) in classes.iter().enumerate() {
        let id = NodeId(base_id + i as u64);
        for &m in members {
            class_of.insert(m, id);
        }
    }

    let mut inner_edges: Vec<BTreeMap<EdgeKey, Superedge>> = vec![BTreeMap::new(); classes.len()];
    let mut crossing: BTreeMap<EdgeKey, Vec<Superedge>> = BTreeMap::new();
    for e in g.edges() {
        let (a, b) = (class_of[&e.source()], class_of[&e.target()]);
        if a == b {
            inner_edges[(a.0 - base_id) as usize].insert(e.key(), e.clone());
        } else {
            // Edges iterate in key order, so each group stays sorted.
            crossing.entry((a, b)).or_default().push(e.clone());
        }
    }

    let mut nodes = BTreeMap::new();
    for (i, (members, edges)) in classes.into_iter().zip(inner_edges).enumerate() {
        let id = NodeId(base_id + i as u64);
        let member_nodes: BTreeMap<NodeId, Supernode> = members
            .iter()
            .map(|m| (*m, g.node(*m).expect("class member exists").clone()))
            .collect();
        let label = class_label(q, &member_nodes, &members);
        let dec = DecGraph::assemble(member_nodes, edges);
        nodes.insert(id, Supernode::contracted(id, label, dec));
    }
    let edges = crossing
        .into_iter()
        .map(|((a, b), dec)| ((a, b), Superedge::from_sorted(a, b, dec)))
        .collect();
    DecGraph::assemble(nodes, edges)
}

/// Classes of equal non-empty membership signature, plus one singleton per
/// uncovered node, ordered by smallest member.
fn partition(g: &DecGraph, q: &FeatureSet) -> Vec<Vec<NodeId>> {
    // Partition refinement: every feature splits each class it touches into
    // the part inside it and the part outside. Class 0 means "no feature".
    let mut class: HashMap<NodeId, usize> = g.node_ids().map(|v| (v, 0)).collect();
    let mut classes = 1;
    let mut split: HashMap<usize, usize> = HashMap::new();
    for f in &q.features {
        split.clear();
        for v in f.grouped() {
            let Some(c) = class.get_mut(&v) else { continue };
            *c = *split.entry(*c).or_insert_with(|| {
                classes += 1;
                classes - 1
            });
        }
    }
    let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    let mut out = Vec::new();
    for v in g.node_ids() {
        match class[&v] {
            0 => out.push(vec![v]),
            c => groups.entry(c).or_default().push(v),
        }
    }
    out.extend(groups.into_values());
    out.sort_unstable_by_key(|members| members[0]);
    out
}

fn class_label(q: &FeatureSet, nodes: &BTreeMap<NodeId, Supernode>, members: &[NodeId]) -> String {
    let smallest = nodes.values().map(Supernode::label).min().unwrap_or_default();
    if members.len() == 1 {
        return smallest.to_owned();
    }
    let tag = q
        .features
        .iter()
        .find(|f| f.grouped().any(|m| m == members[0]))
        .map_or("class", |f| f.kind.scheme_tag());
    format!("{tag}:{}:{smallest}", members.len())
}
