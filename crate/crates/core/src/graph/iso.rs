use serde::Serialize;

use super::{Graph, GraphError, Node};

/// A permutation of `0..n`, read as `forward[v] = image of v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NodeBijection {
    forward: Vec<Node>,
    #[serde(skip)]
    inverse: Vec<Node>,
}

impl NodeBijection {
    pub fn new(forward: Vec<Node>) -> Result<Self, GraphError> {
        let n = forward.len();
        let mut inverse = vec![usize::MAX; n];
        for (v, &image) in forward.iter().enumerate() {
            if image >= n || inverse[image] != usize::MAX {
                return Err(GraphError::NotAPermutation(n));
            }
            inverse[image] = v;
        }
        Ok(NodeBijection { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        let forward: Vec<Node> = (0..n).collect();
        NodeBijection { inverse: forward.clone(), forward }
    }

    pub fn reversal(n: usize) -> Self {
        let forward: Vec<Node> = (0..n).rev().collect();
        NodeBijection { inverse: forward.clone(), forward }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, v: Node) -> Node {
        self.forward[v]
    }

    pub fn preimage(&self, w: Node) -> Node {
        self.inverse[w]
    }

    pub fn forward(&self) -> &[Node] {
        &self.forward
    }

    pub fn inverse(&self) -> NodeBijection {
        NodeBijection { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }
}

/// Relabels `g` so that edge `{u, v}` becomes `{pi(u), pi(v)}`.
pub fn apply_permutation(g: &Graph, pi: &NodeBijection) -> Result<Graph, GraphError> {
    if pi.len() != g.n() {
        return Err(GraphError::NotAPermutation(g.n()));
    }
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (pi.apply(u), pi.apply(v))))
}

/// Backtracking search for an isomorphism `g -> h`. Candidates for each
/// node must agree on degree and on adjacency to every already-mapped node.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<NodeBijection> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (dg, dh) = (g.degrees(), h.degrees());
    let mut sorted_g = dg.clone();
    let mut sorted_h = dh.clone();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return None;
    }

    // Map high-degree nodes first; they constrain the search most.
    let mut order: Vec<Node> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dg[v]));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &dg, &dh, &order, 0, &mut map, &mut used) {
        Some(NodeBijection::new(map).expect("search produces a permutation"))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    dg: &[usize],
    dh: &[usize],
    order: &[Node],
    depth: usize,
    map: &mut [Node],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.n() {
        if used[w] || dg[v] != dh[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| g.has_edge(v, x) == h.has_edge(w, map[x]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, dg, dh, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_validation() {
        assert!(NodeBijection::new(vec![1, 0, 2]).is_ok());
        assert_eq!(NodeBijection::new(vec![0, 0, 2]), Err(GraphError::NotAPermutation(3)));
        assert_eq!(NodeBijection::new(vec![0, 3, 1]), Err(GraphError::NotAPermutation(3)));
        let p = NodeBijection::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.preimage(2), 0);
        assert_eq!(p.inverse().apply(0), 1);
    }

    #[test]
    fn identity_and_reversal() {
        let g = Graph::new(4, [(0, 1), (1, 3)]).unwrap();
        assert_eq!(apply_permutation(&g, &NodeBijection::identity(4)).unwrap(), g);
        let p3 = Graph::path(3);
        assert_eq!(apply_permutation(&p3, &NodeBijection::reversal(3)).unwrap(), p3);
        assert!(apply_permutation(&p3, &NodeBijection::identity(2)).is_err());
    }

    #[test]
    fn path_isomorphisms() {
        let relabeled = Graph::new(3, [(0, 2), (2, 1)]).unwrap();
        let f = find_isomorphism(&Graph::path(3), &relabeled).unwrap();
        assert_eq!(apply_permutation(&Graph::path(3), &f).unwrap(), relabeled);
        assert!(find_isomorphism(&Graph::path(3), &Graph::complete(3)).is_none());
        assert!(find_isomorphism(&Graph::path(3), &Graph::path(4)).is_none());
    }

    #[test]
    fn degree_fixture_components_differ() {
        // left: u - u1 - u11, u - u2 - u21 (path of 5); right: star v, v1, v2
        let left = Graph::path(5);
        let right = Graph::star(2);
        let padded_right = right.disjoint_union(&Graph::empty(2));
        assert!(find_isomorphism(&left, &padded_right).is_none());
        // brute-force oracle over all 5! bijections agrees
        let mut any = false;
        permute(&mut (0..5).collect::<Vec<_>>(), 0, &mut |p| {
            let pi = NodeBijection::new(p.to_vec()).unwrap();
            any |= apply_permutation(&left, &pi).unwrap() == padded_right;
        });
        assert!(!any);
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // C6 vs two triangles: same degree sequence, not isomorphic
        let c6 = Graph::cycle(6);
        let tt = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(find_isomorphism(&c6, &tt).is_none());
        let shuffled = apply_permutation(&c6, &NodeBijection::new(vec![3, 5, 1, 0, 4, 2]).unwrap()).unwrap();
        let f = find_isomorphism(&c6, &shuffled).unwrap();
        assert_eq!(apply_permutation(&c6, &f).unwrap(), shuffled);
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}
