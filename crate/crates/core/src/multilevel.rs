//! A base graph together with a schedule of contraction schemes.
//!
//! Level 0 is the base graph lifted by [`natural_transform`]; level `k` is
//! scheme `k` applied to level `k - 1`. Levels are built on first access and
//! then cached.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::ContractionScheme;
use crate::graph::{is_contraction_of, natural_transform, DecGraph, Digraph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub graph: DecGraph,
    /// Features the scheme detected on the level below (0 for level 0).
    pub features: usize,
    /// Whether cycle enumeration hit its limit while building this level.
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct MultilevelGraph {
    base: Digraph,
    gamma: Vec<ContractionScheme>,
    levels: Vec<OnceLock<Level>>,
}

impl MultilevelGraph {
    /// Fails if `base` contains a self-loop.
    pub fn new(base: Digraph, gamma: Vec<ContractionScheme>) -> Result<Self> {
        let ground = natural_transform(&base)?;
        let levels: Vec<OnceLock<Level>> = (0..=gamma.len()).map(|_| OnceLock::new()).collect();
        let _ = levels[0].set(Level {
            graph: ground,
            features: 0,
            truncated: false,
        });
        Ok(MultilevelGraph { base, gamma, levels })
    }

    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn gamma(&self) -> &[ContractionScheme] {
        &self.gamma
    }

    /// Number of contraction schemes.
    pub fn height(&self) -> usize {
        self.gamma.len()
    }

    pub fn level(&self, k: usize) -> Result<&Level> {
        let cell = self.levels.get(k).ok_or(Error::LevelOutOfRange {
            level: k,
            height: self.height(),
        })?;
        if let Some(level) = cell.get() {
            return Ok(level);
        }
        let below = self.level(k - 1)?;
        Ok(cell.get_or_init(|| {
            let out = self.gamma[k - 1].apply(&below.graph);
            Level {
                graph: out.graph,
                features: out.features,
                truncated: out.truncated,
            }
        }))
    }

    /// The graph at level `k`.
    pub fn con(&self, k: usize) -> Result<&DecGraph> {
        self.level(k).map(|l| &l.graph)
    }

    /// Recomputes level `k` from the base graph, ignoring the cache.
    pub fn con_uncached(&self, k: usize) -> Result<DecGraph> {
        if k > self.height() {
            return Err(Error::LevelOutOfRange {
                level: k,
                height: self.height(),
            });
        }
        let mut g = natural_transform(&self.base)?;
        for scheme in &self.gamma[..k] {
            g = scheme.apply(&g).graph;
        }
        Ok(g)
    }

    pub fn materialize(&self) -> Result<Vec<&Level>> {
        (0..=self.height()).map(|k| self.level(k)).collect()
    }

    /// Level-0 nodes that `node` at `level` stands for.
    pub fn trace(&self, level: usize, node: NodeId) -> Result<BTreeSet<NodeId>> {
        let g = self.con(level)?;
        let v = g.node(node).ok_or(Error::UnknownNode(node))?;
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(v) = stack.pop() {
            if v.is_base() {
                out.insert(v.id());
            } else {
                stack.extend(v.dec().nodes());
            }
        }
        Ok(out)
    }

    /// Rebuilds a hierarchy from serialized parts, checking that level 0
    /// lifts `base` and that every level is a contraction of the one below.
    pub fn from_parts(base: Digraph, gamma: Vec<ContractionScheme>, levels: Vec<Level>) -> Result<Self> {
        let m = Self::new(base, gamma)?;
        if levels.len() > m.levels.len() {
            return Err(Error::Config(format!(
                "{} levels stored for a hierarchy of height {}",
                levels.len(),
                m.height()
            )));
        }
        for (k, level) in levels.into_iter().enumerate() {
            if k == 0 {
                if level.graph != m.levels[0].get().expect("level 0 is set").graph {
                    return Err(Error::NotAContraction("level 0 does not match the base graph".into()));
                }
                continue;
            }
            let below = &m.levels[k - 1].get().expect("levels are stored in order").graph;
            if !is_contraction_of(&level.graph, below) {
                return Err(Error::NotAContraction(format!("level {k} is not a contraction of level {}", k - 1)));
            }
            let _ = m.levels[k].set(level);
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct HierarchyWire {
    base: Digraph,
    gamma: Vec<ContractionScheme>,
    levels: Vec<Level>,
}

impl Serialize for MultilevelGraph {
    /// Materializes every level.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let levels = self.materialize().map_err(serde::ser::Error::custom)?;
        HierarchyWireRef {
            base: &self.base,
            gamma: &self.gamma,
            levels,
        }
        .serialize(serializer)
    }
}

#[derive(Serialize)]
struct HierarchyWireRef<'a> {
    base: &'a Digraph,
    gamma: &'a [ContractionScheme],
    levels: Vec<&'a Level>,
}

impl<'de> Deserialize<'de> for MultilevelGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = HierarchyWire::deserialize(deserializer)?;
        Self::from_parts(wire.base, wire.gamma, wire.levels).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let mut d = Digraph::new();
        for i in 0..n {
            d.add_node(format!("w{i}"), 1);
        }
        for i in 0..n {
            d.add_edge(i, (i + 1) % n, 1);
        }
        d
    }

    #[test]
    fn level_zero_is_the_lift() {
        let m = MultilevelGraph::new(cycle(4), vec![]).unwrap();
        assert_eq!(m.height(), 0);
        assert_eq!(m.con(0).unwrap(), &natural_transform(&cycle(4)).unwrap());
        assert!(matches!(m.con(1), Err(Error::LevelOutOfRange { level: 1, height: 0 })));
        assert_eq!(m.trace(0, NodeId(2)).unwrap().into_iter().collect::<Vec<_>>(), vec![NodeId(2)]);
    }

    #[test]
    fn cycle_contracts_to_one_node_and_traces_back() {
        let m = MultilevelGraph::new(cycle(4), vec![ContractionScheme::simple_cycles()]).unwrap();
        let top = m.con(1).unwrap();
        assert_eq!(top.node_count(), 1);
        let id = top.node_ids().next().unwrap();
        assert_eq!(m.trace(1, id).unwrap().len(), 4);
        assert!(matches!(m.trace(1, NodeId(0)), Err(Error::UnknownNode(_))));
        assert_eq!(m.con_uncached(1).unwrap(), *top);
    }

    #[test]
    fn default_schedule_height_and_json() {
        let m = MultilevelGraph::new(cycle(5), ContractionScheme::default_schedule()).unwrap();
        assert_eq!(m.height(), 7);
        let json = serde_json::to_string(&m).unwrap();
        let back: MultilevelGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back.height(), 7);
        for k in 0..=7 {
            assert_eq!(back.con(k).unwrap(), m.con(k).unwrap());
        }
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn tampered_levels_are_rejected() {
        let m = MultilevelGraph::new(cycle(3), vec![ContractionScheme::Scc]).unwrap();
        let other = MultilevelGraph::new(cycle(4), vec![ContractionScheme::Scc]).unwrap();
        let levels = vec![m.level(0).unwrap().clone(), other.level(1).unwrap().clone()];
        assert!(MultilevelGraph::from_parts(cycle(3), vec![ContractionScheme::Scc], levels).is_err());
    }
}
