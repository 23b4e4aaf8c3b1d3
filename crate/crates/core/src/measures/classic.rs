use std::cmp::Ordering;

use crate::graph::traversal::bfs;
use crate::graph::{Graph, GraphError, Node};
use crate::scalar::Scalar;

use super::{CentralityVector, MeasureError};

/// Every node scores `beta`.
pub fn uniform_centrality<T: Scalar>(g: &Graph, beta: T) -> Result<CentralityVector<T>, MeasureError> {
    if beta.is_negative() {
        return Err(MeasureError::InvalidParameter(format!("beta must be non-negative, got {beta:?}")));
    }
    Ok(CentralityVector::new("uniform", vec![beta; g.n()]))
}

pub fn degree_centrality<T: Scalar>(g: &Graph) -> CentralityVector<T> {
    CentralityVector::new("degree", g.nodes().map(|u| T::of_usize(g.neighbors(u).len())).collect())
}

/// Harmonic closeness: sum of `1 / dist(u, w)` over reachable `w != u`.
pub fn closeness_centrality<T: Scalar>(g: &Graph) -> CentralityVector<T> {
    let values = g
        .nodes()
        .map(|u| {
            bfs(g, u)
                .into_iter()
                .flatten()
                .filter(|&d| d > 0)
                .fold(T::zero(), |acc, d| acc + T::one() / T::of_usize(d))
        })
        .collect();
    CentralityVector::new("closeness", values)
}

/// Sum of `degree(w) / dist(u, w)` over reachable `w != u`.
pub fn weighted_degree_centrality<T: Scalar>(g: &Graph) -> CentralityVector<T> {
    let degree = g.degrees();
    let values = g
        .nodes()
        .map(|u| {
            bfs(g, u)
                .into_iter()
                .enumerate()
                .filter_map(|(w, d)| d.filter(|&d| d > 0).map(|d| (w, d)))
                .fold(T::zero(), |acc, (w, d)| acc + T::of_usize(degree[w]) / T::of_usize(d))
        })
        .collect();
    CentralityVector::new("weighted-degree", values)
}

/// Sum of `degree(w) / n^(2 dist(u, w))` over every reachable `w`, including
/// `u` itself; `n` is the node count of the whole graph.
pub fn decaying_degree_centrality<T: Scalar>(g: &Graph) -> CentralityVector<T> {
    let n2 = T::of_usize(g.n() * g.n());
    let values = g
        .nodes()
        .map(|u| {
            let profile = profile_sums(g, u);
            // Horner evaluation of sum_h s_h * (n^2)^(-h)
            profile
                .iter()
                .rev()
                .fold(T::zero(), |acc, &s| T::from_u64(s).expect("degree sums fit") + acc / n2.clone())
        })
        .collect();
    CentralityVector::new("decaying-degree", values)
}

/// Hop-wise degree sums `s_h = sum of degree(w) over w at distance h` around a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdcProfile {
    pub node: Node,
    pub sums: Vec<u64>,
}

fn profile_sums(g: &Graph, u: Node) -> Vec<u64> {
    let dist = bfs(g, u);
    let depth = dist.iter().flatten().copied().max().unwrap_or(0) + 1;
    let mut sums = vec![0u64; depth];
    for (w, d) in dist.iter().enumerate() {
        if let Some(h) = d {
            sums[*h] += g.neighbors(w).len() as u64;
        }
    }
    sums
}

pub fn ddc_profile(g: &Graph, u: Node) -> Result<DdcProfile, GraphError> {
    g.check_node(u)?;
    Ok(DdcProfile { node: u, sums: profile_sums(g, u) })
}

/// Lexicographic comparison of two profiles, shorter one padded with zeros.
pub fn compare_ddc_lex(p: &DdcProfile, q: &DdcProfile) -> Ordering {
    let len = p.sums.len().max(q.sums.len());
    let at = |s: &[u64], i: usize| s.get(i).copied().unwrap_or(0);
    (0..len)
        .map(|i| at(&p.sums, i).cmp(&at(&q.sums, i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}
