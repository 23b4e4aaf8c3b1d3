//! Exhaustive enumeration of small graphs, labelled or one per isomorphism class.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::{Graph, GraphError, Node};

/// Largest `n` accepted for labelled enumeration (2^21 graphs).
pub const MAX_LABELED_NODES: usize = 7;
/// Largest `n` accepted for isomorphism-class enumeration (12346 classes).
pub const MAX_DEDUP_NODES: usize = 8;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All labelled graphs on `n` nodes in increasing edge-bitmask order,
/// optionally restricted to a half-open bitmask range.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        Self::total(n).map(|end| LabeledGraphs { n, next: 0, end })
    }

    /// A contiguous slice of the bitmask space, for partitioned consumption.
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self, GraphError> {
        let total = Self::total(n)?;
        Ok(LabeledGraphs { n, next: start.min(total), end: end.min(total) })
    }

    pub fn total(n: usize) -> Result<u64, GraphError> {
        if n > MAX_LABELED_NODES {
            return Err(GraphError::BudgetExceeded {
                what: "labelled enumeration",
                n,
                max: MAX_LABELED_NODES,
            });
        }
        Ok(1u64 << pair_count(n))
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = Graph::from_bitmask(self.n, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

/// Stream returned by [`enumerate_graphs`].
#[derive(Debug, Clone)]
pub enum GraphStream {
    Labeled(LabeledGraphs),
    Classes(std::vec::IntoIter<Graph>),
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        match self {
            GraphStream::Labeled(it) => it.next(),
            GraphStream::Classes(it) => it.next(),
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self {
            GraphStream::Labeled(it) => it.size_hint(),
            GraphStream::Classes(it) => it.size_hint(),
        }
    }
}

impl ExactSizeIterator for GraphStream {}

/// All graphs on `n` nodes. With `dedup_isomorphic`, exactly one canonical
/// representative per isomorphism class, ordered by edge bitmask.
pub fn enumerate_graphs(n: usize, dedup_isomorphic: bool) -> Result<GraphStream, GraphError> {
    if dedup_isomorphic {
        Ok(GraphStream::Classes(isomorphism_classes(n)?.to_vec().into_iter()))
    } else {
        LabeledGraphs::new(n).map(GraphStream::Labeled)
    }
}

/// Canonical representatives on `n` nodes, cached per `n`.
pub(crate) fn isomorphism_classes(n: usize) -> Result<&'static [Graph], GraphError> {
    static CACHE: [OnceLock<Vec<Graph>>; MAX_DEDUP_NODES + 1] = [const { OnceLock::new() }; MAX_DEDUP_NODES + 1];
    if n > MAX_DEDUP_NODES {
        return Err(GraphError::BudgetExceeded { what: "isomorphism-class enumeration", n, max: MAX_DEDUP_NODES });
    }
    Ok(CACHE[n].get_or_init(|| build_classes(n)))
}

fn build_classes(n: usize) -> Vec<Graph> {
    if n <= 1 {
        return vec![Graph::empty(n)];
    }
    // Every class on n nodes arises from a class on n - 1 nodes plus one vertex.
    let smaller = isomorphism_classes(n - 1).expect("n - 1 is in range");
    let last = n - 1;
    let mut codes = HashSet::new();
    for base in smaller {
        for nbhd in 0u32..(1 << last) {
            let edges = base
                .edges()
                .iter()
                .copied()
                .chain((0..last).filter(|&v| nbhd >> v & 1 == 1).map(|v| (v, last)));
            let g = Graph::new(n, edges).expect("valid extension");
            codes.insert(canonical_code(&g));
        }
    }
    let m = pair_count(n);
    let mut masks: Vec<u64> = codes.into_iter().map(|c| reverse_bits(c, m)).collect();
    masks.sort_unstable();
    masks.into_iter().map(|mask| Graph::from_bitmask(n, mask)).collect()
}

fn reverse_bits(x: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - width)
    }
}

/// Canonical code: the lexicographically smallest upper-triangle adjacency
/// bit-string (first pair most significant) over all labellings that respect
/// the stable degree-refinement partition. Isomorphic graphs share a code.
pub fn canonical_code(g: &Graph) -> u64 {
    canonical_search(g).0
}

/// The relabelled graph achieving [`canonical_code`].
pub fn canonical_form(g: &Graph) -> Graph {
    let (code, _) = canonical_search(g);
    Graph::from_bitmask(g.n(), reverse_bits(code, pair_count(g.n())))
}

fn canonical_search(g: &Graph) -> (u64, Vec<Node>) {
    let n = g.n();
    assert!(pair_count(n) <= 64, "canonical codes need at most 64 node pairs");
    let cells = refined_cells(g);
    let adj: Vec<u64> = g
        .nodes()
        .map(|u| g.neighbors(u).iter().fold(0u64, |acc, &v| acc | 1 << v))
        .collect();
    let mut slots: Vec<Node> = cells.iter().flatten().copied().collect();
    let bounds: Vec<(usize, usize)> = cells
        .iter()
        .scan(0, |start, cell| {
            let b = (*start, *start + cell.len());
            *start += cell.len();
            Some(b)
        })
        .collect();
    let mut best = (u64::MAX, slots.clone());
    permute_cells(&bounds, 0, bounds.first().map_or(0, |b| b.0), &mut slots, &mut |slots| {
        let mut code = 0u64;
        for p in 0..n {
            let row = adj[slots[p]];
            for &q in &slots[p + 1..] {
                code = code << 1 | (row >> q & 1);
            }
        }
        if code < best.0 {
            best = (code, slots.to_vec());
        }
    });
    best
}

/// Visits every arrangement of `slots` that permutes nodes only within cells.
fn permute_cells(
    bounds: &[(usize, usize)],
    cell: usize,
    k: usize,
    slots: &mut [Node],
    visit: &mut impl FnMut(&[Node]),
) {
    let Some(&(_, end)) = bounds.get(cell) else {
        visit(slots);
        return;
    };
    if k + 1 >= end {
        let next_start = bounds.get(cell + 1).map_or(0, |b| b.0);
        permute_cells(bounds, cell + 1, next_start, slots, visit);
        return;
    }
    for i in k..end {
        slots.swap(k, i);
        permute_cells(bounds, cell, k + 1, slots, visit);
        slots.swap(k, i);
    }
}

/// Iterated degree refinement; cells come out in an isomorphism-invariant order.
fn refined_cells(g: &Graph) -> Vec<Vec<Node>> {
    let mut colors: Vec<usize> = g.degrees();
    let mut distinct = count_distinct(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = g
            .nodes()
            .map(|u| {
                let mut around: Vec<usize> = g.neighbors(u).iter().map(|&v| colors[v]).collect();
                around.sort_unstable();
                (colors[u], around)
            })
            .collect();
        let mut palette = signatures.clone();
        palette.sort();
        palette.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| palette.binary_search(s).expect("signature in palette"))
            .collect();
        let next_distinct = palette.len();
        colors = next;
        if next_distinct == distinct {
            break;
        }
        distinct = next_distinct;
    }
    let mut cells = vec![Vec::new(); distinct];
    for u in g.nodes() {
        cells[colors[u]].push(u);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

fn count_distinct(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, find_isomorphism, NodeBijection};

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_graphs(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(0, false).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(5, false).unwrap().len(), 1024);
        assert!(matches!(enumerate_graphs(8, false), Err(GraphError::BudgetExceeded { .. })));
        assert!(matches!(enumerate_graphs(9, true), Err(GraphError::BudgetExceeded { .. })));
    }

    #[test]
    fn three_node_classes() {
        let classes: Vec<Graph> = enumerate_graphs(3, true).unwrap().collect();
        let edge_counts: Vec<usize> = classes.iter().map(Graph::edge_count).collect();
        let mut sorted = edge_counts.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    /// Brute-force oracle: canonical code by minimising over all n! labellings.
    fn brute_code(g: &Graph) -> u64 {
        let n = g.n();
        let mut best = u64::MAX;
        let mut perm: Vec<usize> = (0..n).collect();
        all_perms(&mut perm, 0, &mut |p| {
            let h = apply_permutation(g, &NodeBijection::new(p.to_vec()).unwrap()).unwrap();
            best = best.min(reverse_bits(h.bitmask(), pair_count(n)));
        });
        best
    }

    fn all_perms(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            all_perms(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn four_node_classes_match_brute_force() {
        let brute: HashSet<u64> = LabeledGraphs::new(4).unwrap().map(|g| brute_code(&g)).collect();
        assert_eq!(brute.len(), 11);
        assert_eq!(enumerate_graphs(4, true).unwrap().count(), 11);
    }

    #[test]
    fn class_counts_up_to_seven() {
        let counts: Vec<usize> = (0..=7).map(|n| enumerate_graphs(n, true).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn five_node_classes_pairwise_non_isomorphic() {
        let classes: Vec<Graph> = enumerate_graphs(5, true).unwrap().collect();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
        let masks: Vec<u64> = classes.iter().map(Graph::bitmask).collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_code_is_a_class_invariant_on_five_nodes() {
        // code equality must coincide with isomorphism: compare the number of
        // distinct codes with the brute-force class count
        let refined: HashSet<u64> = LabeledGraphs::new(5).unwrap().map(|g| canonical_code(&g)).collect();
        assert_eq!(refined.len(), 34);
        for g in LabeledGraphs::new(5).unwrap().step_by(37) {
            let c = canonical_form(&g);
            assert!(find_isomorphism(&g, &c).is_some());
            assert_eq!(canonical_code(&c), canonical_code(&g));
        }
    }

    #[test]
    fn ranges_partition_the_space() {
        let total = LabeledGraphs::total(4).unwrap();
        let a: Vec<u64> = LabeledGraphs::range(4, 0, 20).unwrap().map(|g| g.bitmask()).collect();
        let b: Vec<u64> = LabeledGraphs::range(4, 20, total).unwrap().map(|g| g.bitmask()).collect();
        assert_eq!(a.len() + b.len(), total as usize);
        assert_eq!(b[0], 20);
    }
}
