//! Random graph generators and brute-force reference implementations shared
//! by the integration tests. The references favour obviousness over speed
//! and are only run on small graphs.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mlgraph::graph::{natural_transform, DecGraph, Digraph, NodeId};
use mlgraph::ContractionScheme;
use proptest::prelude::*;
use rand::Rng;

/// Random simple digraph: no self-loops, each ordered pair present with
/// probability `p`, node and edge weights in 1..=3.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let mut d = Digraph::new();
    for i in 0..n {
        d.add_node(format!("w{i}"), rng.gen_range(1..=3));
    }
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen_bool(p) {
                d.add_edge(s, t, rng.gen_range(1..=3));
            }
        }
    }
    d
}

pub fn arb_digraph(max_nodes: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_nodes)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1u64..=3, n),
                prop::collection::vec((0..n, 0..n, 1u64..=3), 0..=n * 3),
            )
        })
        .prop_map(|(weights, edges)| {
            let mut d = Digraph::new();
            for (i, w) in weights.into_iter().enumerate() {
                d.add_node(format!("w{i}"), w);
            }
            for (s, t, w) in edges {
                if s != t {
                    d.add_edge(s, t, w);
                }
            }
            d
        })
}

pub fn arb_scheme() -> impl Strategy<Value = ContractionScheme> {
    prop_oneof![
        (1usize..50).prop_map(|limit| ContractionScheme::SimpleCycles { limit }),
        Just(ContractionScheme::Scc),
        (1usize..3).prop_map(|min_periphery| ContractionScheme::Star { min_periphery }),
        (3usize..5).prop_map(|min_size| ContractionScheme::Clique { min_size }),
    ]
}

pub fn all_schemes() -> Vec<ContractionScheme> {
    vec![
        ContractionScheme::simple_cycles(),
        ContractionScheme::Scc,
        ContractionScheme::star(),
        ContractionScheme::clique(),
    ]
}

pub fn lift(d: &Digraph) -> DecGraph {
    natural_transform(d).expect("generated graphs have no self-loops")
}

/// Adjacency matrix over node positions in id order.
pub fn adjacency(g: &DecGraph) -> Vec<Vec<bool>> {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let pos = |id: NodeId| ids.iter().position(|&x| x == id).unwrap();
    let mut adj = vec![vec![false; ids.len()]; ids.len()];
    for e in g.edges() {
        adj[pos(e.source())][pos(e.target())] = true;
    }
    adj
}

/// Transitive closure by Floyd–Warshall; `r[i][i]` is always true.
pub fn reachability(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r = adj.to_vec();
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Strongly connected components as sets of positions, from mutual
/// reachability.
pub fn scc_oracle(adj: &[Vec<bool>]) -> BTreeSet<BTreeSet<usize>> {
    let r = reachability(adj);
    (0..adj.len())
        .map(|i| (0..adj.len()).filter(|&j| r[i][j] && r[j][i]).collect())
        .collect()
}

/// Every elementary circuit as its node set, found by extending simple paths
/// from each start through larger nodes only.
pub fn cycle_oracle(adj: &[Vec<bool>]) -> BTreeSet<BTreeSet<usize>> {
    fn extend(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>, out: &mut BTreeSet<BTreeSet<usize>>) {
        let last = *path.last().unwrap();
        for next in 0..adj.len() {
            if !adj[last][next] {
                continue;
            }
            if next == start {
                out.insert(path.iter().copied().collect());
            } else if next > start && !path.contains(&next) {
                path.push(next);
                extend(adj, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..adj.len() {
        extend(adj, s, &mut vec![s], &mut out);
    }
    out
}

/// Number of elementary circuits (distinct vertex sequences up to rotation).
pub fn cycle_count_oracle(adj: &[Vec<bool>]) -> usize {
    fn count(adj: &[Vec<bool>], start: usize, path: &mut Vec<usize>) -> usize {
        let last = *path.last().unwrap();
        let mut total = 0;
        for next in 0..adj.len() {
            if !adj[last][next] {
                continue;
            }
            if next == start {
                total += 1;
            } else if next > start && !path.contains(&next) {
                path.push(next);
                total += count(adj, start, path);
                path.pop();
            }
        }
        total
    }
    (0..adj.len()).map(|s| count(adj, s, &mut vec![s])).sum()
}

/// All-pairs hop distances by Floyd–Warshall; `None` for unreachable.
pub fn distances(adj: &[Vec<bool>]) -> Vec<Vec<Option<u64>>> {
    let n = adj.len();
    let mut d: Vec<Vec<Option<u64>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Some(0) } else { adj[i][j].then_some(1) }).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Mean and maximum over reachable ordered pairs of distinct nodes.
pub fn path_oracle(adj: &[Vec<bool>]) -> (Option<f64>, Option<u64>) {
    let d = distances(adj);
    let hops: Vec<u64> = (0..adj.len())
        .flat_map(|i| (0..adj.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .filter_map(|(i, j)| d[i][j])
        .collect();
    if hops.is_empty() {
        return (None, None);
    }
    (Some(hops.iter().sum::<u64>() as f64 / hops.len() as f64), hops.iter().max().copied())
}

pub fn density_oracle(g: &DecGraph) -> Option<f64> {
    let n = g.node_count();
    if n < 2 {
        return None;
    }
    Some(g.edge_count() as f64 / (n * (n - 1)) as f64)
}

/// Pearson correlation of (source weight, target weight) over edges, written
/// as cov / (sd sd) with two-pass sums.
pub fn assortativity_oracle(g: &DecGraph) -> Option<f64> {
    let w = |id| g.node(id).unwrap().weight() as f64;
    let xs: Vec<f64> = g.edges().map(|e| w(e.source())).collect();
    let ys: Vec<f64> = g.edges().map(|e| w(e.target())).collect();
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / n;
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / n;
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / n;
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

/// |E| - |V| + c, with c the number of weakly connected components counted
/// from the symmetric reachability closure.
pub fn cycle_basis_oracle(adj: &[Vec<bool>]) -> u64 {
    let n = adj.len();
    let sym: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| adj[i][j] || adj[j][i]).collect()).collect();
    let r = reachability(&sym);
    let components: BTreeSet<Vec<bool>> = r.into_iter().collect();
    let edges = adj.iter().flatten().filter(|&&b| b).count();
    (edges + components.len()) as u64 - n as u64
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

pub fn close_opt(a: Option<f64>, b: Option<f64>, rel: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => close(a, b, rel),
        _ => false,
    }
}

/// Whether the node/edge structure of `g` has no directed cycle, by
/// repeatedly deleting sources.
pub fn is_acyclic(g: &DecGraph) -> bool {
    let adj = adjacency(g);
    let n = adj.len();
    let mut alive = vec![true; n];
    for _ in 0..n {
        let Some(v) = (0..n).find(|&v| alive[v] && (0..n).all(|u| !alive[u] || !adj[u][v])) else {
            return false;
        };
        alive[v] = false;
    }
    true
}

/// Dream excerpt used as the text pipeline fixture, and its expected lemmas.
pub const LAKE_DREAM: &str = "I am at a lake in my hometown. Something is going on there and we are in a hurry to get away. \
We get in a station wagon and have a hard time getting two pet deer, with the same name as my son and daughter, corralled. \
Finally we get them into the vehicle and we are almost all the way out when the wheel goes off one side of the road and the \
vehicle is stuck and the deer is about halfway out. At this point I notice my mother-in-law is cutting off a Christmas tree \
which is growing in the water at the end of the dock.";

pub const LAKE_LEMMAS: &str = "lake hometown something go hurry get away get station wagon hard time get two pet deer name son \
daughter corral finally get vehicle almost way wheel go one side road vehicle stick deer halfway point notice mother-in-law \
cut christmas tree grow water end dock";

/// Pure directed cycle on `n` nodes with unit weights.
pub fn cycle_digraph(n: usize) -> Digraph {
    let mut d = Digraph::new();
    for i in 0..n {
        d.add_node(format!("c{i}"), 1);
    }
    for i in 0..n {
        d.add_edge(i, (i + 1) % n, 1);
    }
    d
}

/// Synthetic narrative over a small vocabulary so that words repeat and
/// the sequence graph has cycles.
pub fn synthetic_text(rng: &mut impl Rng, words: usize, vocab: usize) -> String {
    const ROOTS: [&str; 12] = ["lake", "wagon", "deer", "dock", "tree", "road", "wheel", "son", "daughter", "water", "vehicle", "station"];
    (0..words)
        .map(|_| {
            let i = rng.gen_range(0..vocab);
            if i < ROOTS.len() {
                ROOTS[i].to_owned()
            } else {
                // Letters only so the tokenizer keeps the word whole.
                let mut w = String::from("zq");
                let mut k = i;
                while k > 0 {
                    w.push((b'a' + (k % 26) as u8) as char);
                    k /= 26;
                }
                w
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
