//! The six centrality axioms as executable predicates.
//!
//! Each checker evaluates one measure on one graph (and the graphs derived
//! from it) and returns an [`AxiomVerdict`]. A violated verdict always
//! carries a [`Witness`] that [`replay_witness`] can re-check from scratch.
//! Strict inequalities are exact for rational measures and use the scalar
//! tolerance for float measures.

mod checks;
mod injection;
mod replay;
mod suite;

pub use checks::{
    check_axiom, check_diminishing_impact, check_edge_monotonicity, check_isolated_minima,
    check_isomorphic_invariance, check_locality, check_structural_consistency,
};
pub use injection::dominating_injection_exists;
pub use replay::replay_witness;
pub use suite::{run_axiom_suite, AggregateVerdict, SuiteConfig, SuiteReport};

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Node, NodeBijection};
use crate::measures::{HandleInner, MeasureError, MeasureHandle};
use crate::scalar::Score;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AxiomError {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    IsomorphicInvariance,
    Locality,
    IsolatedMinima,
    EdgeMonotonicity,
    DiminishingImpact,
    StructuralConsistency,
}

impl AxiomId {
    pub const ALL: [AxiomId; 6] = [
        AxiomId::IsomorphicInvariance,
        AxiomId::Locality,
        AxiomId::IsolatedMinima,
        AxiomId::EdgeMonotonicity,
        AxiomId::DiminishingImpact,
        AxiomId::StructuralConsistency,
    ];

    /// 1-based position in the axiom list.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(k: usize) -> Option<AxiomId> {
        Self::ALL.get(k.checked_sub(1)?).copied()
    }

    pub fn title(self) -> &'static str {
        match self {
            AxiomId::IsomorphicInvariance => "Isomorphic Invariance",
            AxiomId::Locality => "Locality",
            AxiomId::IsolatedMinima => "Isolated Minima",
            AxiomId::EdgeMonotonicity => "Edge Monotonicity",
            AxiomId::DiminishingImpact => "Diminishing Impact",
            AxiomId::StructuralConsistency => "Structural Consistency",
        }
    }

    fn slug(self) -> &'static str {
        match self {
            AxiomId::IsomorphicInvariance => "isomorphic-invariance",
            AxiomId::Locality => "locality",
            AxiomId::IsolatedMinima => "isolated-minima",
            AxiomId::EdgeMonotonicity => "edge-monotonicity",
            AxiomId::DiminishingImpact => "diminishing-impact",
            AxiomId::StructuralConsistency => "structural-consistency",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Axiom {} ({})", self.number(), self.title())
    }
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    /// Accepts `3`, `A3`, `axiom3` or a slug such as `isolated-minima`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let digits = t.trim_start_matches("axiom").trim_start_matches('a').trim_start_matches(['-', '_', ' ']);
        if let Ok(k) = digits.parse::<usize>() {
            if let Some(a) = AxiomId::from_number(k) {
                return Ok(a);
            }
        }
        AxiomId::ALL
            .into_iter()
            .find(|a| a.slug() == t || a.slug().replace('-', "_") == t)
            .ok_or_else(|| AxiomError::UnknownAxiom(s.into()))
    }
}

impl Serialize for AxiomId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.number() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfied,
    Violated,
}

impl Status {
    pub fn mark(self) -> &'static str {
        match self {
            Status::Satisfied => "✓",
            Status::Violated => "✗",
        }
    }
}

/// How the diminishing-impact quantifier over layer nodes is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiminishingReading {
    /// Every node of a nearer layer must change strictly more than every node of a farther one.
    #[default]
    Universal,
    /// Some node of the nearer layer must change strictly more than some node of the farther one.
    Existential,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckConfig {
    /// Random permutations tried by the invariance check, on top of identity and reversal.
    pub trials: usize,
    /// Try all `n!` permutations when `n <= 7`.
    pub exhaustive_permutations: bool,
    pub seed: u64,
    pub diminishing: DiminishingReading,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { trials: 20, exhaustive_permutations: false, seed: 0, diminishing: DiminishingReading::Universal }
    }
}

/// A concrete falsifying instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub axiom: AxiomId,
    pub graph: Graph,
    pub added_edge: Option<(Node, Node)>,
    pub permutation: Option<NodeBijection>,
    /// Hop indices `(h, h_bar)` of the two compared layers (diminishing impact only).
    pub hops: Option<(usize, usize)>,
    /// Role name and node, e.g. `("u", 3)`.
    pub nodes: Vec<(String, Node)>,
    /// Labelled centrality values whose comparison fails.
    pub values: Vec<(String, Score)>,
    pub description: String,
}

impl Witness {
    pub fn node(&self, role: &str) -> Option<Node> {
        self.nodes.iter().find(|(r, _)| r == role).map(|(_, v)| *v)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Witness", 8)?;
        s.serialize_field("axiom", &self.axiom)?;
        s.serialize_field("graph", &self.graph)?;
        s.serialize_field("added_edge", &self.added_edge.map(|(u, v)| [u, v]))?;
        s.serialize_field("permutation", &self.permutation.as_ref().map(|p| p.forward().to_vec()))?;
        s.serialize_field("hops", &self.hops.map(|(a, b)| [a, b]))?;
        let nodes: Vec<serde_json::Value> =
            self.nodes.iter().map(|(r, v)| serde_json::json!({"role": r, "node": v})).collect();
        s.serialize_field("nodes", &nodes)?;
        let values: Vec<serde_json::Value> =
            self.values.iter().map(|(l, x)| serde_json::json!({"label": l, "value": x.to_json()})).collect();
        s.serialize_field("values", &values)?;
        s.serialize_field("description", &self.description)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub measure: String,
    pub status: Status,
    /// The axiom's precondition never fired.
    pub vacuous: bool,
    /// The verdict rests on tolerance-based float comparisons.
    pub numeric: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

impl MeasureHandle {
    /// Runs one axiom checker against this measure.
    pub fn check(&self, axiom: AxiomId, g: &Graph, config: &CheckConfig) -> Result<AxiomVerdict, AxiomError> {
        let mut verdict = match self.inner() {
            HandleInner::Exact(m) => check_axiom(m, axiom, g, config)?,
            HandleInner::Float(m) => check_axiom(m, axiom, g, config)?,
        };
        verdict.measure = self.name.clone();
        Ok(verdict)
    }

    pub fn replay(&self, witness: &Witness) -> Result<bool, AxiomError> {
        match self.inner() {
            HandleInner::Exact(m) => replay_witness(m, witness),
            HandleInner::Float(m) => replay_witness(m, witness),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_ids_parse() {
        assert_eq!("4".parse::<AxiomId>().unwrap(), AxiomId::EdgeMonotonicity);
        assert_eq!("A6".parse::<AxiomId>().unwrap(), AxiomId::StructuralConsistency);
        assert_eq!("axiom2".parse::<AxiomId>().unwrap(), AxiomId::Locality);
        assert_eq!("isolated-minima".parse::<AxiomId>().unwrap(), AxiomId::IsolatedMinima);
        assert!("7".parse::<AxiomId>().is_err());
        assert!("nope".parse::<AxiomId>().is_err());
        assert_eq!(AxiomId::ALL.len(), 6);
        assert!(AxiomId::ALL.iter().enumerate().all(|(i, a)| a.number() == i + 1));
    }
}
