use super::{ids, Feature, FeatureKind, FeatureSet};
use crate::graph::{DecGraph, Topology};

/// Strongly connected components restricted to nodes with `active[v]`, by
/// Tarjan's algorithm without recursion. Each component is sorted; the list
/// is ordered by smallest member.
pub fn strongly_connected_components(succ: &[Vec<usize>], active: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (node, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&w) = succ[v].get(pos) {
                call.last_mut().expect("frame present").1 += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Strongly connected components with at least two members.
pub fn detect_sccs(g: &DecGraph) -> FeatureSet {
    let t = Topology::of(g);
    let features = strongly_connected_components(&t.succ, &vec![true; t.len()])
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| Feature::new(FeatureKind::Scc, ids(&t, c)))
        .collect();
    FeatureSet::new(g, features, false)
}
