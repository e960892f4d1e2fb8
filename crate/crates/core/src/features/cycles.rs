//! Elementary circuit enumeration (Johnson's algorithm, iterative form).

use super::scc::strongly_connected_components;
use super::{ids, Feature, FeatureKind, FeatureSet};
use crate::graph::{DecGraph, Topology};

pub const DEFAULT_CYCLE_LIMIT: usize = 100_000;

/// Calls `emit` with every elementary circuit, each as a node path starting
/// at its smallest node. Stops once
/// `emit` returns `false`; returns whether enumeration ran to completion.
pub(crate) fn for_each_circuit(succ: &[Vec<usize>], mut emit: impl FnMut(&[usize]) -> bool) -> bool {
    let n = succ.len();
    let mut blocked = vec![false; n];
    let mut closed = vec![false; n];
    let mut block_map: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut work: Vec<Vec<usize>> = strongly_connected_components(succ, &vec![true; n])
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    let mut in_scc = vec![false; n];

    while let Some(scc) = work.pop() {
        for &v in &scc {
            in_scc[v] = true;
            blocked[v] = false;
            closed[v] = false;
            block_map[v].clear();
        }
        let start = scc[0];
        let mut path = vec![start];
        blocked[start] = true;
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&(v, pos)) = stack.last() {
            if let Some(&w) = succ[v].get(pos) {
                stack.last_mut().expect("frame present").1 += 1;
                if !in_scc[w] {
                    continue;
                }
                if w == start {
                    if !emit(&path) {
                        return false;
                    }
                    for &p in &path {
                        closed[p] = true;
                    }
                } else if !blocked[w] {
                    path.push(w);
                    stack.push((w, 0));
                    closed[w] = false;
                    blocked[w] = true;
                }
                continue;
            }
            if closed[v] {
                unblock(v, &mut blocked, &mut block_map);
            } else {
                for &w in &succ[v] {
                    if in_scc[w] && !block_map[w].contains(&v) {
                        block_map[w].push(v);
                    }
                }
            }
            stack.pop();
            path.pop();
        }
        for &v in &scc {
            in_scc[v] = false;
        }
        let mut mask = vec![false; n];
        for &v in &scc[1..] {
            mask[v] = true;
        }
        work.extend(
            strongly_connected_components(succ, &mask)
                .into_iter()
                .filter(|c| c.len() > 1),
        );
    }
    true
}

fn unblock(v: usize, blocked: &mut [bool], block_map: &mut [Vec<usize>]) {
    let mut todo = vec![v];
    while let Some(u) = todo.pop() {
        if blocked[u] {
            blocked[u] = false;
            todo.append(&mut block_map[u]);
        }
    }
}

/// Node sets of the elementary circuits of `g`. At most `limit` circuits
/// are enumerated; `truncated` is set when more exist.
///
/// # Panics
/// If `limit` is zero.
pub fn detect_simple_cycles(g: &DecGraph, limit: usize) -> FeatureSet {
    assert!(limit > 0, "cycle limit must be positive");
    let t = Topology::of(g);
    let mut features = Vec::new();
    let mut found = 0;
    let complete = for_each_circuit(&t.succ, |path| {
        if found == limit {
            return false;
        }
        found += 1;
        features.push(Feature::new(FeatureKind::SimpleCycle, ids(&t, path.iter().copied())));
        true
    });
    FeatureSet::new(g, features, !complete)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuits(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_circuit(succ, |p| {
            out.push(p.to_vec());
            true
        });
        out.sort();
        out
    }

    #[test]
    fn triangle_and_two_cycle() {
        assert_eq!(circuits(&[vec![1], vec![2], vec![0]]), vec![vec![0, 1, 2]]);
        assert_eq!(circuits(&[vec![1], vec![0]]), vec![vec![0, 1]]);
        assert!(circuits(&[vec![1], vec![2], vec![]]).is_empty());
    }

    #[test]
    fn complete_digraph_on_four_nodes() {
        // 6 two-cycles, 8 three-cycles, 6 four-cycles.
        let succ: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        let all = circuits(&succ);
        assert_eq!(all.len(), 20);
        assert_eq!(all.iter().filter(|c| c.len() == 4).count(), 6);
    }

    #[test]
    fn limit_is_reported() {
        let succ: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        let mut seen = 0;
        let complete = for_each_circuit(&succ, |_| {
            seen += 1;
            seen < 5
        });
        assert!(!complete);
        assert_eq!(seen, 5);
    }
}
