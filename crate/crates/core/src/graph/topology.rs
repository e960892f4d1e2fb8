use std::collections::HashMap;

use super::{DecGraph, NodeId};

/// Dense adjacency view of a [`DecGraph`]. Index `i` corresponds to the
/// `i`-th smallest node id; neighbor lists are sorted.
#[derive(Clone, Debug)]
pub struct Topology {
    pub ids: Vec<NodeId>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    index: HashMap<NodeId, usize>,
}

impl Topology {
    pub fn of(g: &DecGraph) -> Self {
        let ids: Vec<NodeId> = g.node_ids().collect();
        let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut succ = vec![Vec::new(); ids.len()];
        let mut pred = vec![Vec::new(); ids.len()];
        // Edge keys iterate in (source, target) order, so lists come out sorted.
        for (s, t) in g.edge_map().keys() {
            let (s, t) = (index[s], index[t]);
            succ[s].push(t);
            pred[t].push(s);
        }
        for p in &mut pred {
            p.sort_unstable();
        }
        Topology {
            ids,
            succ,
            pred,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Distinct neighbors ignoring direction, sorted.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.succ[v].iter().chain(&self.pred[v]).copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
