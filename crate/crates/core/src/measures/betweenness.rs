use std::collections::VecDeque;

use crate::graph::{shortest_path_counts, Graph, Node};
use crate::scalar::Scalar;

use super::{CentralityVector, MeasureError};

/// Largest graph accepted by [`betweenness_oracle`].
pub const ORACLE_MAX_NODES: usize = 8;

/// Betweenness over unordered pairs `{s, t}` not containing `u`, computed by
/// dependency accumulation on exact shortest-path counts.
pub fn betweenness_centrality<T: Scalar>(g: &Graph) -> CentralityVector<T> {
    let mut bc = vec![T::zero(); g.n()];
    for s in g.nodes() {
        let table = shortest_path_counts(g, s).expect("source in range");
        let sigma: Vec<T> = table.sigma.iter().map(T::from_count).collect();
        let mut delta = vec![T::zero(); g.n()];
        for &w in table.order.iter().rev() {
            let dw = table.dist.dist[w].expect("ordered nodes are reachable");
            if dw == 0 {
                continue;
            }
            let share = (T::one() + delta[w].clone()) / sigma[w].clone();
            for &v in g.neighbors(w) {
                if table.dist.dist[v] == Some(dw - 1) {
                    delta[v] = delta[v].clone() + sigma[v].clone() * share.clone();
                }
            }
            bc[w] = bc[w].clone() + delta[w].clone();
        }
    }
    // each unordered pair was counted from both endpoints
    let two = T::of_usize(2);
    CentralityVector::new("betweenness", bc.into_iter().map(|x| x / two.clone()).collect())
}

/// Reference betweenness by explicit enumeration of every shortest path.
/// Shares no code with [`betweenness_centrality`] beyond the graph type.
pub fn betweenness_oracle<T: Scalar>(g: &Graph) -> Result<CentralityVector<T>, MeasureError> {
    let n = g.n();
    if n > ORACLE_MAX_NODES {
        return Err(MeasureError::BudgetExceeded { what: "betweenness oracle", n, max: ORACLE_MAX_NODES });
    }
    let mut bc = vec![T::zero(); n];
    for s in 0..n {
        for t in s + 1..n {
            let to_t = plain_bfs(g, t);
            if to_t[s].is_none() {
                continue;
            }
            let mut paths = Vec::new();
            let mut current = vec![s];
            walk(g, &to_t, t, &mut current, &mut paths);
            let total = T::of_usize(paths.len());
            for (u, score) in bc.iter_mut().enumerate() {
                if u == s || u == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&u)).count();
                if through > 0 {
                    *score = score.clone() + T::of_usize(through) / total.clone();
                }
            }
        }
    }
    Ok(CentralityVector::new("betweenness", bc))
}

fn plain_bfs(g: &Graph, source: Node) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0usize);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = dist[x].map(|d| d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn walk(g: &Graph, to_t: &[Option<usize>], t: Node, current: &mut Vec<Node>, paths: &mut Vec<Vec<Node>>) {
    let x = *current.last().expect("path is never empty");
    if x == t {
        paths.push(current.clone());
        return;
    }
    let here = to_t[x].expect("walk stays inside the component");
    for &y in g.neighbors(x) {
        if to_t[y] == Some(here - 1) {
            current.push(y);
            walk(g, to_t, t, current, paths);
            current.pop();
        }
    }
}
