use super::{ids, Feature, FeatureKind, FeatureSet};
use crate::graph::{DecGraph, Topology};

/// Maximal cliques of the undirected projection (an edge in either
/// direction connects two nodes) with at least `min_size` members.
/// Bron–Kerbosch with Tomita pivoting.
pub fn detect_cliques(g: &DecGraph, min_size: usize) -> FeatureSet {
    let t = Topology::of(g);
    let adj: Vec<Vec<usize>> = (0..t.len()).map(|v| t.undirected_neighbors(v)).collect();
    let mut features = Vec::new();
    let mut r = Vec::new();
    expand(&adj, &mut r, (0..t.len()).collect(), Vec::new(), &mut |clique| {
        if clique.len() >= min_size {
            features.push(Feature::new(FeatureKind::Clique, ids(&t, clique.iter().copied())));
        }
    });
    FeatureSet::new(g, features, false)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn expand(adj: &[Vec<usize>], r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if p.is_empty() {
        if x.is_empty() {
            emit(r);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| (intersect(&adj[u], &p).len(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.iter().copied().filter(|v| adj[pivot].binary_search(v).is_err()).collect();
    for v in candidates {
        r.push(v);
        expand(adj, r, intersect(&p, &adj[v]), intersect(&x, &adj[v]), emit);
        r.pop();
        p.retain(|&u| u != v);
        let at = x.partition_point(|&u| u < v);
        x.insert(at, v);
    }
}
