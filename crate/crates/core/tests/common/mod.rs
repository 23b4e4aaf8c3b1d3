//! Shared helpers for the integration tests: graph strategies, score
//! arithmetic and a naive oracle that expands each axiom's quantifiers
//! literally, with none of the checker's shortcuts.
#![allow(dead_code)]

use centrality_core::axioms::{AxiomId, DiminishingReading, Status};
use centrality_core::graph::{pair_count, Graph, Node};
use centrality_core::measures::MeasureHandle;
use centrality_core::scalar::{Score, F64_TOLERANCE};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Graphs on `min_n..=max_n` nodes (at most 11, so pairs fit a u64 mask)
/// with independent uniform edges.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let m = pair_count(n);
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        any::<u64>().prop_map(move |bits| Graph::from_bitmask(n, bits & full))
    })
}

/// A graph plus a permutation of its nodes.
pub fn arb_graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<Node>)> {
    arb_graph(1, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Every labeled graph on exactly `n` nodes, in bitmask order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << pair_count(n)).map(move |mask| Graph::from_bitmask(n, mask))
}

pub fn relabel(g: &Graph, p: &[Node]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|&(a, b)| (p[a], p[b]))).unwrap()
}

pub fn gt(a: &Score, b: &Score) -> bool {
    match (a, b) {
        (Score::Exact(x), Score::Exact(y)) => x > y,
        (Score::Float(x), Score::Float(y)) => x - y > F64_TOLERANCE,
        _ => panic!("mixed score kinds"),
    }
}

pub fn eq(a: &Score, b: &Score) -> bool {
    a.matches(b)
}

pub fn is_zero(a: &Score) -> bool {
    match a {
        Score::Exact(x) => x.is_zero(),
        Score::Float(x) => x.abs() <= F64_TOLERANCE,
    }
}

pub fn abs_diff(a: &Score, b: &Score) -> Score {
    match (a, b) {
        (Score::Exact(x), Score::Exact(y)) => Score::Exact((x - y).abs()),
        (Score::Float(x), Score::Float(y)) => Score::Float((x - y).abs()),
        _ => panic!("mixed score kinds"),
    }
}

/// All-pairs hop distances by Floyd–Warshall; `None` when unreachable.
pub fn distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for &(a, b) in g.edges() {
        d[a][b] = Some(1);
        d[b][a] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|z| x + y < z) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

fn eval(m: &MeasureHandle, g: &Graph) -> Vec<Score> {
    m.evaluate(g).unwrap().values
}

/// `(status, vacuous)` by direct expansion of the axiom's definition.
/// Isomorphic invariance tries every permutation, so keep `n` small.
pub fn naive_verdict(m: &MeasureHandle, axiom: AxiomId, g: &Graph, reading: DiminishingReading) -> (Status, bool) {
    let n = g.n();
    let f = eval(m, g);
    let verdict = |ok: bool, vacuous: bool| (if ok { Status::Satisfied } else { Status::Violated }, vacuous);
    match axiom {
        AxiomId::IsomorphicInvariance => {
            let ok = (0..n).permutations(n).all(|p| {
                let h = eval(m, &relabel(g, &p));
                (0..n).all(|v| eq(&f[v], &h[p[v]]))
            });
            verdict(ok, false)
        }
        AxiomId::Locality => {
            let d = distances(g);
            let ok = (0..n).all(|v| {
                let comp: Vec<Node> = (0..n).filter(|&w| d[v][w].is_some()).collect();
                let local = |w: Node| comp.iter().position(|&c| c == w).unwrap();
                let edges = g.edges().iter().filter(|(a, _)| comp.contains(a)).map(|&(a, b)| (local(a), local(b)));
                let sub = Graph::new(comp.len(), edges).unwrap();
                eq(&f[v], &eval(m, &sub)[local(v)])
            });
            verdict(ok, false)
        }
        AxiomId::IsolatedMinima => {
            let isolated: Vec<Node> = (0..n).filter(|&v| (0..n).all(|w| !g.has_edge(v, w))).collect();
            verdict(isolated.iter().all(|&v| is_zero(&f[v])), isolated.is_empty())
        }
        AxiomId::EdgeMonotonicity => {
            let mut fired = false;
            let mut ok = true;
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    fired = true;
                    let h = eval(m, &g.add_edge(u, v).unwrap());
                    ok &= gt(&h[u], &f[u]) && gt(&h[v], &f[v]);
                }
            }
            verdict(ok, !fired)
        }
        AxiomId::DiminishingImpact => {
            let d = distances(g);
            let mut fired = false;
            let mut ok = true;
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let hop = |z: Node| match (d[u][z], d[v][z]) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                    let depth = (0..n).filter_map(hop).max().unwrap_or(0);
                    if depth == 0 {
                        continue;
                    }
                    fired = true;
                    let h = eval(m, &g.add_edge(u, v).unwrap());
                    let delta: Vec<Score> = (0..n).map(|z| abs_diff(&h[z], &f[z])).collect();
                    let layer = |k: usize| (0..n).filter(move |&z| hop(z) == Some(k));
                    for a in 0..=depth {
                        for b in a + 1..=depth {
                            ok &= match reading {
                                DiminishingReading::Universal => {
                                    layer(a).all(|z| layer(b).all(|w| gt(&delta[z], &delta[w])))
                                }
                                DiminishingReading::Existential => {
                                    layer(a).any(|z| layer(b).any(|w| gt(&delta[z], &delta[w])))
                                }
                            };
                        }
                    }
                }
            }
            verdict(ok, !fired)
        }
        AxiomId::StructuralConsistency => {
            let nbrs = |x: Node| (0..n).filter(move |&y| g.has_edge(x, y)).collect::<Vec<_>>();
            let mut fired = false;
            let mut ok = true;
            for u in 0..n {
                for v in 0..n {
                    let (nu, nv) = (nbrs(u), nbrs(v));
                    if u == v || nv.is_empty() || nu.len() < nv.len() {
                        continue;
                    }
                    // every injection N(v) -> N(u), tried one by one
                    let dominated = nu
                        .iter()
                        .copied()
                        .permutations(nv.len())
                        .any(|image| nv.iter().zip(&image).all(|(&a, &b)| gt(&f[b], &f[a])));
                    if dominated {
                        fired = true;
                        ok &= gt(&f[u], &f[v]);
                    }
                }
            }
            verdict(ok, !fired)
        }
    }
}
