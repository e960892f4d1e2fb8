//! Per-level graph measurements.
//!
//! Every metric is a pure function of a level (plus the lemma budget for the
//! normalized ones). Values that are undefined for a graph are `None` and
//! serialize as `null`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{DecGraph, Topology};
use crate::multilevel::MultilevelGraph;

/// Number of lemma occurrences in the source text; normalizer for the
/// length-sensitive metrics. Always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaBudget(u64);

impl LemmaBudget {
    pub fn new(lemmas: u64) -> Option<Self> {
        (lemmas >= 1).then_some(LemmaBudget(lemmas))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Extras {
    pub edges: usize,
    /// 100 * edges / L.
    pub normalized_edges: f64,
    pub total_edge_weight: u64,
    pub mean_edge_weight: Option<f64>,
    /// Sizes of the classes merged into this level's supernodes.
    pub class_size_min: Option<usize>,
    pub class_size_mean: Option<f64>,
    pub class_size_max: Option<usize>,
    pub cycle_basis_count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelMetrics {
    pub level: usize,
    pub nnc: Option<f64>,
    pub cp: Option<f64>,
    pub gwac: Option<f64>,
    pub nnw: Option<f64>,
    pub nnwv: Option<f64>,
    pub nnwm: Option<f64>,
    pub gspl: Option<f64>,
    pub gdi: Option<u64>,
    pub gde: Option<f64>,
    pub truncated_cycles: bool,
    pub extras: Extras,
}

/// Relative drop in node count from `prev` to `curr`, in percent. Level 0
/// (no `prev`) is 0 by convention; an empty `prev` gives `None`.
pub fn contraction_percentage(prev: Option<&DecGraph>, curr: &DecGraph) -> Option<f64> {
    let Some(prev) = prev else { return Some(0.0) };
    if prev.node_count() == 0 {
        return None;
    }
    // Subtract the counts first; the difference is exact.
    let dropped = prev.node_count() as f64 - curr.node_count() as f64;
    Some(100.0 * dropped / prev.node_count() as f64)
}

/// Pearson correlation between source and target weights over all edges.
pub fn weight_assortativity(g: &DecGraph) -> Option<f64> {
    if g.edge_count() < 2 {
        return None;
    }
    let weight = |id| g.node(id).expect("edge endpoints exist").weight() as f64;
    let pairs: Vec<(f64, f64)> = g.edges().map(|e| (weight(e.source()), weight(e.target()))).collect();
    pearson(&pairs)
}

pub(crate) fn pearson(pairs: &[(f64, f64)]) -> Option<f64> {
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// |E| / (n (n - 1)).
pub fn density(g: &DecGraph) -> Option<f64> {
    let n = g.node_count() as f64;
    (g.node_count() >= 2).then(|| g.edge_count() as f64 / (n * (n - 1.0)))
}

/// Mean and maximum hop distance over ordered pairs `(u, v)`, `u != v`,
/// with `v` reachable from `u`.
pub fn path_stats(g: &DecGraph) -> (Option<f64>, Option<u64>) {
    let t = Topology::of(g);
    let n = t.len();
    let mut dist = vec![u64::MAX; n];
    let mut queue = VecDeque::new();
    let (mut sum, mut pairs, mut max) = (0u64, 0u64, 0u64);
    for s in 0..n {
        dist.fill(u64::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &t.succ[u] {
                if dist[v] == u64::MAX {
                    dist[v] = dist[u] + 1;
                    sum += dist[v];
                    pairs += 1;
                    max = max.max(dist[v]);
                    queue.push_back(v);
                }
            }
        }
    }
    if pairs == 0 {
        (None, None)
    } else {
        (Some(sum as f64 / pairs as f64), Some(max))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightStats {
    pub nnw: f64,
    pub nnwv: f64,
    pub nnwm: f64,
    pub nnc: f64,
}

/// Node weights as a percentage of the lemma budget: mean, population
/// variance and maximum, plus the node count as a percentage of the budget.
/// `None` for an empty graph.
pub fn weight_stats(g: &DecGraph, budget: LemmaBudget) -> Option<WeightStats> {
    if g.node_count() == 0 {
        return None;
    }
    let l = budget.get() as f64;
    let xs: Vec<f64> = g.nodes().map(|v| 100.0 * v.weight() as f64 / l).collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some(WeightStats {
        nnw: mean,
        nnwv: var,
        nnwm: max,
        nnc: 100.0 * n / l,
    })
}

/// |E| - |V| + number of weakly connected components.
pub fn cycle_basis_count(g: &DecGraph) -> u64 {
    let t = Topology::of(g);
    let mut parent: Vec<usize> = (0..t.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = t.len();
    for (u, succ) in t.succ.iter().enumerate() {
        for &v in succ {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    (g.edge_count() + components - t.len()) as u64
}

pub fn extras(g: &DecGraph, prev: Option<&DecGraph>, budget: LemmaBudget) -> Extras {
    let total_edge_weight: u64 = g.edges().map(|e| e.weight()).sum();
    let sizes: Vec<usize> = match prev {
        Some(_) => g.nodes().map(|v| v.dec().node_count()).collect(),
        None => Vec::new(),
    };
    Extras {
        edges: g.edge_count(),
        normalized_edges: 100.0 * g.edge_count() as f64 / budget.get() as f64,
        total_edge_weight,
        mean_edge_weight: (g.edge_count() > 0).then(|| total_edge_weight as f64 / g.edge_count() as f64),
        class_size_min: sizes.iter().copied().min(),
        class_size_mean: (!sizes.is_empty()).then(|| sizes.iter().sum::<usize>() as f64 / sizes.len() as f64),
        class_size_max: sizes.iter().copied().max(),
        cycle_basis_count: cycle_basis_count(g),
    }
}

pub fn level_metrics(level: usize, g: &DecGraph, prev: Option<&DecGraph>, budget: LemmaBudget, truncated: bool) -> LevelMetrics {
    let ws = weight_stats(g, budget);
    let (gspl, gdi) = path_stats(g);
    LevelMetrics {
        level,
        nnc: ws.map(|w| w.nnc),
        cp: contraction_percentage(prev, g),
        gwac: weight_assortativity(g),
        nnw: ws.map(|w| w.nnw),
        nnwv: ws.map(|w| w.nnwv),
        nnwm: ws.map(|w| w.nnwm),
        gspl,
        gdi,
        gde: density(g),
        truncated_cycles: truncated,
        extras: extras(g, prev, budget),
    }
}

/// One row per level of `m`, materializing every level.
pub fn hierarchy_metrics(m: &MultilevelGraph, budget: LemmaBudget) -> Result<Vec<LevelMetrics>> {
    let levels = m.materialize()?;
    Ok(levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let prev = k.checked_sub(1).map(|j| &levels[j].graph);
            level_metrics(k, &level.graph, prev, budget, level.truncated)
        })
        .collect())
}
