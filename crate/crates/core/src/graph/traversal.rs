use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Graph, GraphError, Node};

/// BFS distances from a source; `None` marks unreachable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: Node,
    pub dist: Vec<Option<usize>>,
}

impl DistanceVector {
    pub fn get(&self, v: Node) -> Option<usize> {
        self.dist[v]
    }

    pub fn eccentricity(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

pub(crate) fn bfs(g: &Graph, source: Node) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap_or(0) + 1;
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d);
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn shortest_distances(g: &Graph, u: Node) -> Result<DistanceVector, GraphError> {
    g.check_node(u)?;
    Ok(DistanceVector { source: u, dist: bfs(g, u) })
}

/// Connected components; blocks are sorted and ordered by their smallest node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<Node>>,
    pub component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn block_of(&self, u: Node) -> &[Node] {
        &self.blocks[self.component_of[u]]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn connected_components(g: &Graph) -> ComponentPartition {
    let mut component_of = vec![usize::MAX; g.n()];
    let mut blocks = Vec::new();
    for s in g.nodes() {
        if component_of[s] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![s];
        component_of[s] = id;
        let mut i = 0;
        while i < block.len() {
            let x = block[i];
            for &y in g.neighbors(x) {
                if component_of[y] == usize::MAX {
                    component_of[y] = id;
                    block.push(y);
                }
            }
            i += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    ComponentPartition { blocks, component_of }
}

/// The subgraph induced by one component, relabelled to `0..k` in increasing
/// original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedComponent {
    pub graph: Graph,
    /// `original[new] = old`
    pub original: Vec<Node>,
}

impl InducedComponent {
    pub fn local(&self, old: Node) -> Option<Node> {
        self.original.binary_search(&old).ok()
    }
}

pub fn induced_component(g: &Graph, u: Node) -> Result<InducedComponent, GraphError> {
    g.check_node(u)?;
    let dist = bfs(g, u);
    let original: Vec<Node> = g.nodes().filter(|&v| dist[v].is_some()).collect();
    let local = |old: Node| original.binary_search(&old).expect("endpoint inside the component");
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, _)| dist[a].is_some())
        .map(|&(a, b)| (local(a), local(b)));
    let graph = Graph::new(original.len(), edges)?;
    Ok(InducedComponent { graph, original })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Node(Node),
    Pair(Node, Node),
}

/// Nodes grouped by (minimum) distance to an anchor. `layers[h]` is the
/// `h`-hop set; nodes with no path to the anchor are listed separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopPartition {
    pub anchor: Anchor,
    pub layers: Vec<Vec<Node>>,
    pub unreachable: Vec<Node>,
}

impl HopPartition {
    pub fn layer(&self, h: usize) -> &[Node] {
        self.layers.get(h).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Layer index of `z`, or `None` if unreachable.
    pub fn hop_of(&self, z: Node) -> Option<usize> {
        self.layers.iter().position(|layer| layer.contains(&z))
    }

    fn from_distances(anchor: Anchor, dist: &[Option<usize>]) -> Self {
        let depth = dist.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut layers = vec![Vec::new(); depth];
        let mut unreachable = Vec::new();
        for (z, d) in dist.iter().enumerate() {
            match d {
                Some(h) => layers[*h].push(z),
                None => unreachable.push(z),
            }
        }
        HopPartition { anchor, layers, unreachable }
    }
}

pub fn hop_partition_node(g: &Graph, u: Node) -> Result<HopPartition, GraphError> {
    g.check_node(u)?;
    Ok(HopPartition::from_distances(Anchor::Node(u), &bfs(g, u)))
}

pub fn hop_partition_pair(g: &Graph, u: Node, v: Node) -> Result<HopPartition, GraphError> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    let (du, dv) = (bfs(g, u), bfs(g, v));
    let dist: Vec<Option<usize>> = du
        .iter()
        .zip(&dv)
        .map(|(a, b)| match (a, b) {
            (Some(x), Some(y)) => Some((*x).min(*y)),
            (Some(x), None) | (None, Some(x)) => Some(*x),
            (None, None) => None,
        })
        .collect();
    Ok(HopPartition::from_distances(Anchor::Pair(u, v), &dist))
}

/// Number of distinct shortest paths from `source` to every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    pub source: Node,
    pub sigma: Vec<BigUint>,
    pub dist: DistanceVector,
    /// Nodes in non-decreasing distance order (reachable only).
    pub order: Vec<Node>,
}

pub fn shortest_path_counts(g: &Graph, s: Node) -> Result<PathCountTable, GraphError> {
    g.check_node(s)?;
    let mut dist = vec![None; g.n()];
    let mut sigma = vec![BigUint::zero(); g.n()];
    let mut order = Vec::with_capacity(g.n());
    dist[s] = Some(0);
    sigma[s] = BigUint::one();
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let dx = dist[x].unwrap_or(0);
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
            if dist[y] == Some(dx + 1) {
                let add = sigma[x].clone();
                sigma[y] += add;
            }
        }
    }
    Ok(PathCountTable { source: s, sigma, dist: DistanceVector { source: s, dist }, order })
}
