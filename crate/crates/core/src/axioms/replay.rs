use num_traits::Signed;

use crate::graph::{apply_permutation, hop_partition_pair, induced_component, Node};
use crate::measures::Measure;
use crate::scalar::{Scalar, Score};

use super::checks::{a1_values, a2_values, a4_values, a5_values, a6_values};
use super::{AxiomError, AxiomId, Witness};

fn same_values(stored: &[(String, Score)], fresh: &[(String, Score)]) -> bool {
    stored.len() == fresh.len() && stored.iter().zip(fresh).all(|((l, a), (k, b))| l == k && a.matches(b))
}

fn role(w: &Witness, name: &str) -> Result<Node, AxiomError> {
    let v = w.node(name).ok_or_else(|| AxiomError::InvalidArguments(format!("witness lacks role {name:?}")))?;
    w.graph.check_node(v)?;
    Ok(v)
}

fn missing(what: &str) -> AxiomError {
    AxiomError::InvalidArguments(format!("witness lacks {what}"))
}

/// Re-evaluates the measure on the witness graph(s) and reports whether the
/// stored values are reproduced and still falsify the axiom.
pub fn replay_witness<M: Measure + ?Sized>(m: &M, w: &Witness) -> Result<bool, AxiomError> {
    let g = &w.graph;
    let f = m.evaluate(g)?;
    match w.axiom {
        AxiomId::IsomorphicInvariance => {
            let pi = w.permutation.as_ref().ok_or_else(|| missing("a permutation"))?;
            let v = role(w, "v")?;
            let moved = m.evaluate(&apply_permutation(g, pi)?)?;
            Ok(same_values(&w.values, &a1_values(&f, &moved, pi, v)) && !f[v].same(&moved[pi.apply(v)]))
        }
        AxiomId::Locality => {
            let v = role(w, "v")?;
            let comp = induced_component(g, v)?;
            let local = m.evaluate(&comp.graph)?;
            let lv = comp.local(v).expect("v lies in its own component");
            Ok(same_values(&w.values, &a2_values(&f[v], &local[lv])) && !f[v].same(&local[lv]))
        }
        AxiomId::IsolatedMinima => {
            let v = role(w, "v")?;
            let zero = <M::Value as num_traits::Zero>::zero();
            let fresh = vec![("F_v(G)".to_string(), f[v].to_score())];
            Ok(g.is_isolated(v) && same_values(&w.values, &fresh) && !f[v].same(&zero))
        }
        AxiomId::EdgeMonotonicity => {
            let (u, v) = w.added_edge.ok_or_else(|| missing("an added edge"))?;
            let x = role(w, "x")?;
            let after = m.evaluate(&g.add_edge(u, v)?)?;
            Ok((x == u || x == v) && same_values(&w.values, &a4_values(&f[x], &after[x])) && !after[x].exceeds(&f[x]))
        }
        AxiomId::DiminishingImpact => {
            let (u, v) = w.added_edge.ok_or_else(|| missing("an added edge"))?;
            let (h, hbar) = w.hops.ok_or_else(|| missing("hop indices"))?;
            let (near, far) = (role(w, "z_h")?, role(w, "z_hbar")?);
            let layers = hop_partition_pair(g, u, v)?;
            let placed = h < hbar && layers.hop_of(near) == Some(h) && layers.hop_of(far) == Some(hbar);
            let after = m.evaluate(&g.add_edge(u, v)?)?;
            let dn = (after[near].clone() - f[near].clone()).abs();
            let df = (after[far].clone() - f[far].clone()).abs();
            Ok(placed && same_values(&w.values, &a5_values(&f, &after, near, far)) && !dn.exceeds(&df))
        }
        AxiomId::StructuralConsistency => {
            let (u, v) = (role(w, "u")?, role(w, "v")?);
            let mut matched = Vec::new();
            for i in 1.. {
                match (w.node(&format!("a{i}")), w.node(&format!("h(a{i})"))) {
                    (Some(a), Some(b)) => matched.push((a, b)),
                    _ => break,
                }
            }
            let mut image: Vec<Node> = matched.iter().map(|p| p.1).collect();
            let mut source: Vec<Node> = matched.iter().map(|p| p.0).collect();
            image.sort_unstable();
            source.sort_unstable();
            source.dedup();
            // the matching must cover N(v) injectively from N(u), each pair strictly dominated
            let antecedent = u != v
                && !image.is_empty()
                && image == g.neighbors(v)
                && source.len() == matched.len()
                && source.iter().all(|&a| g.has_edge(u, a))
                && g.neighbors(u).len() >= g.neighbors(v).len()
                && matched.iter().all(|&(a, b)| f[a].exceeds(&f[b]));
            Ok(antecedent && same_values(&w.values, &a6_values(&f, u, v)) && !f[u].exceeds(&f[v]))
        }
    }
}
