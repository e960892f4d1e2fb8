use super::{Feature, FeatureSet};
use crate::graph::{DecGraph, Topology};

/// Star formations: a center together with every node whose only neighbor,
/// ignoring direction, is that center. Centers are tried in ascending id
/// order and a node already taken as periphery cannot become a center.
/// Stars with fewer than `min_periphery` peripheral nodes are skipped.
pub fn detect_stars(g: &DecGraph, min_periphery: usize) -> FeatureSet {
    let t = Topology::of(g);
    let neighbors: Vec<Vec<usize>> = (0..t.len()).map(|v| t.undirected_neighbors(v)).collect();
    let mut taken = vec![false; t.len()];
    let mut features = Vec::new();
    for c in 0..t.len() {
        if taken[c] {
            continue;
        }
        let periphery: Vec<usize> = neighbors[c]
            .iter()
            .copied()
            .filter(|&p| !taken[p] && neighbors[p] == [c])
            .collect();
        if periphery.is_empty() || periphery.len() < min_periphery {
            continue;
        }
        for &p in &periphery {
            taken[p] = true;
        }
        features.push(Feature::star(t.ids[c], periphery.iter().map(|&p| t.ids[p])));
    }
    FeatureSet::new(g, features, false)
}
