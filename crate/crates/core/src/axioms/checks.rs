use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{
    apply_permutation, connected_components, hop_partition_pair, induced_component, Graph, Node, NodeBijection,
};
use crate::measures::Measure;
use crate::scalar::{Scalar, ScoreKind};

use super::injection::sorted_desc;
use super::{AxiomError, AxiomId, AxiomVerdict, CheckConfig, DiminishingReading, Status, Witness};

/// Largest `n` for which exhaustive permutation checking is attempted.
pub const EXHAUSTIVE_PERMUTATION_MAX: usize = 7;

pub fn check_axiom<M: Measure + ?Sized>(
    m: &M,
    axiom: AxiomId,
    g: &Graph,
    config: &CheckConfig,
) -> Result<AxiomVerdict, AxiomError> {
    match axiom {
        AxiomId::IsomorphicInvariance => check_isomorphic_invariance(m, g, config),
        AxiomId::Locality => check_locality(m, g),
        AxiomId::IsolatedMinima => check_isolated_minima(m, g),
        AxiomId::EdgeMonotonicity => check_edge_monotonicity(m, g),
        AxiomId::DiminishingImpact => check_diminishing_impact(m, g, config.diminishing),
        AxiomId::StructuralConsistency => check_structural_consistency(m, g),
    }
}

fn verdict<M: Measure + ?Sized>(m: &M, axiom: AxiomId, vacuous: bool, witness: Option<Witness>) -> AxiomVerdict {
    AxiomVerdict {
        axiom,
        measure: m.name().to_string(),
        status: if witness.is_some() { Status::Violated } else { Status::Satisfied },
        vacuous: vacuous && witness.is_none(),
        numeric: <M::Value as Scalar>::KIND == ScoreKind::Float,
        witness,
    }
}

fn label<T: Scalar>(pairs: &[(&str, &T)]) -> Vec<(String, crate::scalar::Score)> {
    pairs.iter().map(|(l, x)| (l.to_string(), x.to_score())).collect()
}

fn abs_diff<T: Scalar>(after: &T, before: &T) -> T {
    (after.clone() - before.clone()).abs()
}

pub(super) fn permutations_to_try(n: usize, config: &CheckConfig) -> Vec<NodeBijection> {
    if config.exhaustive_permutations && n <= EXHAUSTIVE_PERMUTATION_MAX {
        return (0..n)
            .permutations(n)
            .map(|p| NodeBijection::new(p).expect("permutation of 0..n"))
            .collect();
    }
    let mut perms = vec![NodeBijection::identity(n), NodeBijection::reversal(n)];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.trials {
        let mut p: Vec<Node> = (0..n).collect();
        p.shuffle(&mut rng);
        perms.push(NodeBijection::new(p).expect("shuffle of 0..n"));
    }
    perms
}

pub(super) fn a1_values<T: Scalar>(before: &[T], after: &[T], pi: &NodeBijection, v: Node) -> Vec<(String, crate::scalar::Score)> {
    label(&[("F_v(G)", &before[v]), ("F_pi(v)(pi G)", &after[pi.apply(v)])])
}

/// Checks `F(pi G)[pi(v)] = F(G)[v]` over identity, reversal and seeded random
/// permutations, or over all of them when exhaustive mode is on and `n <= 7`.
pub fn check_isomorphic_invariance<M: Measure + ?Sized>(
    m: &M,
    g: &Graph,
    config: &CheckConfig,
) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::IsomorphicInvariance;
    let base = m.evaluate(g)?;
    for pi in permutations_to_try(g.n(), config) {
        let h = apply_permutation(g, &pi)?;
        let moved = m.evaluate(&h)?;
        if let Some(v) = g.nodes().find(|&v| !base[v].same(&moved[pi.apply(v)])) {
            let values = a1_values(&base, &moved, &pi, v);
            let description = format!(
                "F_{v}(G) = {} but F_{}(pi G) = {} under permutation {:?}",
                values[0].1,
                pi.apply(v),
                values[1].1,
                pi.forward()
            );
            let witness = Witness {
                axiom,
                graph: g.clone(),
                added_edge: None,
                permutation: Some(pi),
                hops: None,
                nodes: vec![("v".into(), v)],
                values,
                description,
            };
            return Ok(verdict(m, axiom, false, Some(witness)));
        }
    }
    Ok(verdict(m, axiom, false, None))
}

pub(super) fn a2_values<T: Scalar>(whole: &T, local: &T) -> Vec<(String, crate::scalar::Score)> {
    label(&[("F_v(G)", whole), ("F_v(G[K_v])", local)])
}

/// Checks that every node scores the same in its own connected component as in the whole graph.
pub fn check_locality<M: Measure + ?Sized>(m: &M, g: &Graph) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::Locality;
    let whole = m.evaluate(g)?;
    let parts = connected_components(g);
    for block in &parts.blocks {
        let comp = induced_component(g, block[0])?;
        let local = m.evaluate(&comp.graph)?;
        for (i, &v) in comp.original.iter().enumerate() {
            if !whole[v].same(&local[i]) {
                let values = a2_values(&whole[v], &local[i]);
                let description = format!(
                    "node {v}: {} in the whole graph, {} in its component of {} nodes",
                    values[0].1,
                    values[1].1,
                    comp.original.len()
                );
                let witness = Witness {
                    axiom,
                    graph: g.clone(),
                    added_edge: None,
                    permutation: None,
                    hops: None,
                    nodes: vec![("v".into(), v)],
                    values,
                    description,
                };
                return Ok(verdict(m, axiom, false, Some(witness)));
            }
        }
    }
    Ok(verdict(m, axiom, false, None))
}

/// Checks that every isolated node scores exactly zero.
pub fn check_isolated_minima<M: Measure + ?Sized>(m: &M, g: &Graph) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::IsolatedMinima;
    let isolated: Vec<Node> = g.nodes().filter(|&v| g.is_isolated(v)).collect();
    if isolated.is_empty() {
        return Ok(verdict(m, axiom, true, None));
    }
    let f = m.evaluate(g)?;
    let zero = <M::Value as num_traits::Zero>::zero();
    if let Some(&v) = isolated.iter().find(|&&v| !f[v].same(&zero)) {
        let values = label(&[("F_v(G)", &f[v])]);
        let description = format!("isolated node {v} scores {}", values[0].1);
        let witness = Witness {
            axiom,
            graph: g.clone(),
            added_edge: None,
            permutation: None,
            hops: None,
            nodes: vec![("v".into(), v)],
            values,
            description,
        };
        return Ok(verdict(m, axiom, false, Some(witness)));
    }
    Ok(verdict(m, axiom, false, None))
}

pub(super) fn a4_values<T: Scalar>(before: &T, after: &T) -> Vec<(String, crate::scalar::Score)> {
    label(&[("F_x(G)", before), ("F_x(G+uv)", after)])
}

/// Checks that adding any missing edge strictly raises the score of both endpoints.
pub fn check_edge_monotonicity<M: Measure + ?Sized>(m: &M, g: &Graph) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::EdgeMonotonicity;
    if g.is_complete() {
        return Ok(verdict(m, axiom, true, None));
    }
    let before = m.evaluate(g)?;
    for (u, v) in g.non_edges() {
        let after = m.evaluate(&g.add_edge(u, v)?)?;
        if let Some(x) = [u, v].into_iter().find(|&x| !after[x].exceeds(&before[x])) {
            let values = a4_values(&before[x], &after[x]);
            let description =
                format!("adding edge {{{u}, {v}}} moves node {x} from {} to {}", values[0].1, values[1].1);
            let witness = Witness {
                axiom,
                graph: g.clone(),
                added_edge: Some((u, v)),
                permutation: None,
                hops: None,
                nodes: vec![("u".into(), u), ("v".into(), v), ("x".into(), x)],
                values,
                description,
            };
            return Ok(verdict(m, axiom, false, Some(witness)));
        }
    }
    Ok(verdict(m, axiom, false, None))
}

pub(super) fn a5_values<T: Scalar>(before: &[T], after: &[T], near: Node, far: Node) -> Vec<(String, crate::scalar::Score)> {
    let (dn, df) = (abs_diff(&after[near], &before[near]), abs_diff(&after[far], &before[far]));
    label(&[
        ("F_z_h(G)", &before[near]),
        ("F_z_h(G+uv)", &after[near]),
        ("F_z_hbar(G)", &before[far]),
        ("F_z_hbar(G+uv)", &after[far]),
        ("|delta z_h|", &dn),
        ("|delta z_hbar|", &df),
    ])
}

/// Per-layer extreme: value and the first node attaining it.
fn extreme<T: Scalar>(layer: &[Node], delta: &[T], want_max: bool) -> (Node, T) {
    let mut best = (layer[0], delta[layer[0]].clone());
    for &z in &layer[1..] {
        let better = if want_max { delta[z] > best.1 } else { delta[z] < best.1 };
        if better {
            best = (z, delta[z].clone());
        }
    }
    best
}

/// Checks that adding a missing edge `{u, v}` changes nearer nodes strictly
/// more than farther ones, with hop layers taken around `{u, v}` in the graph
/// before the addition.
pub fn check_diminishing_impact<M: Measure + ?Sized>(
    m: &M,
    g: &Graph,
    reading: DiminishingReading,
) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::DiminishingImpact;
    let mut before = None;
    let mut triggered = false;
    for (u, v) in g.non_edges() {
        let layers = hop_partition_pair(g, u, v)?.layers;
        if layers.len() < 2 {
            continue;
        }
        triggered = true;
        if before.is_none() {
            before = Some(m.evaluate(g)?);
        }
        let before = before.as_ref().expect("evaluated above");
        let after = m.evaluate(&g.add_edge(u, v)?)?;
        let delta: Vec<M::Value> = g.nodes().map(|z| abs_diff(&after[z], &before[z])).collect();
        let lows: Vec<_> = layers.iter().map(|l| extreme(l, &delta, false)).collect();
        let highs: Vec<_> = layers.iter().map(|l| extreme(l, &delta, true)).collect();
        for h in 0..layers.len() {
            for hbar in h + 1..layers.len() {
                // universal: the weakest near node against the strongest far node
                let (near, far) = match reading {
                    DiminishingReading::Universal => (&lows[h], &highs[hbar]),
                    DiminishingReading::Existential => (&highs[h], &lows[hbar]),
                };
                if !near.1.exceeds(&far.1) {
                    let values = a5_values(before, &after, near.0, far.0);
                    let description = format!(
                        "adding edge {{{u}, {v}}}: node {} at hop {h} changes by {}, node {} at hop {hbar} by {}",
                        near.0, values[4].1, far.0, values[5].1
                    );
                    let witness = Witness {
                        axiom,
                        graph: g.clone(),
                        added_edge: Some((u, v)),
                        permutation: None,
                        hops: Some((h, hbar)),
                        nodes: vec![("u".into(), u), ("v".into(), v), ("z_h".into(), near.0), ("z_hbar".into(), far.0)],
                        values,
                        description,
                    };
                    return Ok(verdict(m, axiom, false, Some(witness)));
                }
            }
        }
    }
    Ok(verdict(m, axiom, !triggered, None))
}

/// Neighbours of `u` and `v` paired greedily: the `i`-th highest scorer
/// around `u` against the `i`-th highest around `v`.
pub(super) fn greedy_matching<T: Scalar>(g: &Graph, f: &[T], u: Node, v: Node) -> Vec<(Node, Node)> {
    let by_score = |x: Node| {
        let mut ns = g.neighbors(x).to_vec();
        ns.sort_by(|&a, &b| f[b].partial_cmp(&f[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
        ns
    };
    by_score(u).into_iter().zip(by_score(v)).collect()
}

pub(super) fn a6_values<T: Scalar>(f: &[T], u: Node, v: Node) -> Vec<(String, crate::scalar::Score)> {
    label(&[("F_u(G)", &f[u]), ("F_v(G)", &f[v])])
}

/// Checks that whenever the neighbours of `v` can be matched injectively to
/// strictly higher-scoring neighbours of `u`, `u` itself scores strictly
/// higher than `v`. Pairs where `v` has no neighbours are skipped.
pub fn check_structural_consistency<M: Measure + ?Sized>(m: &M, g: &Graph) -> Result<AxiomVerdict, AxiomError> {
    let axiom = AxiomId::StructuralConsistency;
    let f = m.evaluate(g)?;
    let around: Vec<Vec<M::Value>> =
        g.nodes().map(|x| sorted_desc(&g.neighbors(x).iter().map(|&y| f[y].clone()).collect::<Vec<_>>())).collect();
    let mut triggered = false;
    for u in g.nodes() {
        for v in g.nodes() {
            let (du, dv) = (g.neighbors(u).len(), g.neighbors(v).len());
            if u == v || dv == 0 || du < dv {
                continue;
            }
            if !super::dominating_injection_exists(&around[u], &around[v])? {
                continue;
            }
            triggered = true;
            if !f[u].exceeds(&f[v]) {
                let matching = greedy_matching(g, &f, u, v);
                let mut nodes = vec![("u".to_string(), u), ("v".to_string(), v)];
                for (i, (a, b)) in matching.iter().enumerate() {
                    nodes.push((format!("a{}", i + 1), *a));
                    nodes.push((format!("h(a{})", i + 1), *b));
                }
                let values = a6_values(&f, u, v);
                let pairs = matching
                    .iter()
                    .map(|&(a, b)| format!("{}>{}", f[a].to_score(), f[b].to_score()))
                    .join(", ");
                let description = format!(
                    "neighbours of {u} dominate those of {v} ({pairs}) yet F_{u} = {} and F_{v} = {}",
                    values[0].1, values[1].1
                );
                let witness = Witness {
                    axiom,
                    graph: g.clone(),
                    added_edge: None,
                    permutation: None,
                    hops: None,
                    nodes,
                    values,
                    description,
                };
                return Ok(verdict(m, axiom, false, Some(witness)));
            }
        }
    }
    Ok(verdict(m, axiom, !triggered, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{measure_registry, FnMeasure, MeasureError};
    use crate::Exact;

    fn check(abbr: &str, axiom: AxiomId, g: &Graph) -> AxiomVerdict {
        let reg = measure_registry();
        let m = reg.iter().find(|m| m.abbreviation == abbr).unwrap();
        let v = m.check(axiom, g, &CheckConfig::default()).unwrap();
        if let Some(w) = &v.witness {
            assert!(m.replay(w).unwrap(), "witness does not replay: {w:?}");
        }
        v
    }

    fn label_foil() -> FnMeasure<Exact, impl Fn(&Graph) -> Result<Vec<Exact>, MeasureError> + Send + Sync> {
        FnMeasure::new("label", |g: &Graph| Ok(g.nodes().map(|u| Exact::from_integer(u.into())).collect()))
    }

    #[test]
    fn label_dependent_measure_is_caught() {
        let v = check_isomorphic_invariance(&label_foil(), &Graph::path(3), &CheckConfig::default()).unwrap();
        assert!(v.is_violated());
        let w = v.witness.unwrap();
        assert!(w.permutation.is_some());
        assert!(replay_ok(&w));
    }

    fn replay_ok(w: &Witness) -> bool {
        super::super::replay_witness(&label_foil(), w).unwrap()
    }

    #[test]
    fn exhaustive_permutations_count() {
        let cfg = CheckConfig { exhaustive_permutations: true, ..Default::default() };
        assert_eq!(permutations_to_try(4, &cfg).len(), 24);
        assert_eq!(permutations_to_try(8, &cfg).len(), 22);
        assert_eq!(permutations_to_try(5, &CheckConfig::default()), permutations_to_try(5, &CheckConfig::default()));
    }

    #[test]
    fn locality_examples() {
        let g = Graph::path(3).disjoint_union(&Graph::path(2));
        let ec = check("EC", AxiomId::Locality, &g);
        assert!(ec.is_violated() && ec.numeric);
        assert_eq!(ec.witness.unwrap().node("v"), Some(3));
        assert!(check("DDC", AxiomId::Locality, &g).is_violated());
        for abbr in ["DC", "CC", "BC", "WDC"] {
            assert!(!check(abbr, AxiomId::Locality, &g).is_violated());
        }
    }

    #[test]
    fn isolated_minima_examples() {
        let g = Graph::path(2).disjoint_union(&Graph::empty(1));
        assert!(check("UC", AxiomId::IsolatedMinima, &g).is_violated());
        for abbr in ["DC", "CC", "BC", "WDC", "EC", "DDC"] {
            assert!(!check(abbr, AxiomId::IsolatedMinima, &g).is_violated(), "{abbr}");
        }
        let connected = check("UC", AxiomId::IsolatedMinima, &Graph::path(3));
        assert!(connected.vacuous && !connected.is_violated());
    }

    #[test]
    fn edge_monotonicity_examples() {
        // u=0 v=1 w=2 x=3
        let g = Graph::new(4, [(0, 2), (1, 2), (2, 3)]).unwrap();
        let bc = check("BC", AxiomId::EdgeMonotonicity, &g);
        assert!(bc.is_violated());
        let w = bc.witness.unwrap();
        assert_eq!(w.values[0].1, w.values[1].1);
        let ec = check("EC", AxiomId::EdgeMonotonicity, &Graph::path(2).disjoint_union(&Graph::empty(1)));
        assert!(ec.is_violated());
        let complete = check("DC", AxiomId::EdgeMonotonicity, &Graph::complete(4));
        assert!(complete.vacuous);
        assert!(!check("DC", AxiomId::EdgeMonotonicity, &g).is_violated());
    }

    #[test]
    fn diminishing_impact_on_the_path() {
        let cc = check("CC", AxiomId::DiminishingImpact, &Graph::path(7));
        assert!(cc.is_violated());
        assert!(!check("DDC", AxiomId::DiminishingImpact, &Graph::path(5)).is_violated());
        let v = check("DC", AxiomId::DiminishingImpact, &Graph::empty(2));
        assert!(v.vacuous && !v.is_violated());
        assert!(check("DC", AxiomId::DiminishingImpact, &Graph::empty(3)).vacuous);
        // the only non-edge of a 3-path has the middle node one hop away
        let p3 = check("DC", AxiomId::DiminishingImpact, &Graph::path(3));
        assert!(!p3.vacuous && !p3.is_violated());
    }

    #[test]
    fn existential_reading_is_weaker() {
        let g = Graph::path(7);
        let reg = measure_registry();
        for m in &reg {
            let ex = CheckConfig { diminishing: DiminishingReading::Existential, ..Default::default() };
            let strong = m.check(AxiomId::DiminishingImpact, &g, &CheckConfig::default()).unwrap();
            let weak = m.check(AxiomId::DiminishingImpact, &g, &ex).unwrap();
            assert!(!weak.is_violated() || strong.is_violated(), "{}", m.name);
            if let Some(w) = &weak.witness {
                assert!(m.replay(w).unwrap());
            }
        }
    }

    #[test]
    fn structural_consistency_examples() {
        // u=0 u1=1 u2=2 u11=3 u21=4 | v=5 v1=6 v2=7
        let tails = Graph::new(8, [(0, 1), (0, 2), (1, 3), (2, 4), (5, 6), (5, 7)]).unwrap();
        let dc = check("DC", AxiomId::StructuralConsistency, &tails);
        assert!(dc.is_violated());
        let tri = tails.add_edge(1, 2).unwrap();
        let bc = check("BC", AxiomId::StructuralConsistency, &tri);
        assert!(bc.is_violated());
        let w = bc.witness.unwrap();
        assert_eq!((w.node("u"), w.node("v")), (Some(0), Some(5)));
        let uc = check("UC", AxiomId::StructuralConsistency, &tri);
        assert!(uc.vacuous && !uc.is_violated());
        assert!(!check("EC", AxiomId::StructuralConsistency, &tri).is_violated());
    }

    #[test]
    fn isolated_pairs_do_not_trigger_structural_consistency() {
        for abbr in ["DC", "EC", "BC"] {
            let v = check(abbr, AxiomId::StructuralConsistency, &Graph::empty(3));
            assert!(v.vacuous && !v.is_violated());
        }
    }
}
