//! Immutable simple undirected graphs on nodes `0..n` and the structural
//! primitives built on them.

mod enumerate;
mod io;
mod iso;
pub(crate) mod traversal;

pub use enumerate::{
    canonical_code, canonical_form, enumerate_graphs, pair_count, GraphStream, LabeledGraphs,
    MAX_DEDUP_NODES, MAX_LABELED_NODES,
};
pub(crate) use enumerate::isomorphism_classes;
pub use io::{parse_edge_list, parse_graph, parse_json, serialize_edge_list, serialize_json, GraphJson};
pub use iso::{apply_permutation, find_isomorphism, NodeBijection};
pub use traversal::{
    connected_components, hop_partition_node, hop_partition_pair, induced_component,
    shortest_distances, shortest_path_counts, Anchor, ComponentPartition, DistanceVector,
    HopPartition, InducedComponent, PathCountTable,
};

use thiserror::Error;

pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} is out of range for a graph on {n} nodes")]
    InvalidNode { node: Node, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("edge {{{0}, {1}}} already present")]
    DuplicateEdge(Node, Node),
    #[error("mapping is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("{what}: n = {n} exceeds the supported maximum {max}")]
    BudgetExceeded { what: &'static str, n: usize, max: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A simple undirected unweighted graph. Values are never mutated; edits
/// produce new graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Node, Node)>,
    adj: Vec<Vec<Node>>,
}

impl Graph {
    /// Builds a graph, normalising every pair to `(min, max)` and dropping duplicates.
    pub fn new(n: usize, edge_list: impl IntoIterator<Item = (Node, Node)>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (u, v) in edge_list {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::InvalidNode { node, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_normalized(n, edges))
    }

    fn from_normalized(n: usize, edges: Vec<(Node, Node)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_normalized(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three nodes");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_normalized(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_normalized(n, edges)
    }

    /// Star with `leaves` leaves; the centre is node 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_normalized(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    /// Places `other` after `self`, shifting its labels by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_normalized(self.n + other.n, edges)
    }

    /// Decodes an edge-subset bitmask; bit `k` selects the `k`-th pair in
    /// row-major upper-triangle order `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    pub fn from_bitmask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Self::from_normalized(n, edges)
    }

    /// Inverse of [`Graph::from_bitmask`]; requires `n <= 11`.
    pub fn bitmask(&self) -> u64 {
        assert!(pair_count(self.n) <= 64, "bitmask needs at most 64 node pairs");
        self.edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << pair_index(self.n, u, v))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn nodes(&self) -> std::ops::Range<Node> {
        0..self.n
    }

    /// Sorted neighbour list. Panics on an out-of-range node.
    pub fn neighbors(&self, u: Node) -> &[Node] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn check_node(&self, u: Node) -> Result<(), GraphError> {
        if u < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidNode { node: u, n: self.n })
        }
    }

    pub fn degree(&self, u: Node) -> Result<usize, GraphError> {
        self.check_node(u)?;
        Ok(self.adj[u].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_isolated(&self, u: Node) -> bool {
        self.adj[u].is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == pair_count(self.n)
    }

    /// Returns a new graph with `{u, v}` added.
    pub fn add_edge(&self, u: Node, v: Node) -> Result<Graph, GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = (u.min(v), u.max(v));
        match self.edges.binary_search(&e) {
            Ok(_) => Err(GraphError::DuplicateEdge(e.0, e.1)),
            Err(pos) => {
                let mut edges = self.edges.clone();
                edges.insert(pos, e);
                Ok(Self::from_normalized(self.n, edges))
            }
        }
    }

    /// All unordered pairs `{u, v}` with `u < v` that are not edges.
    pub fn non_edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v))
        })
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

pub(crate) fn pair_index(n: usize, u: Node, v: Node) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}
