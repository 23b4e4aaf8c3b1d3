//! The seven centrality measures, an independent betweenness oracle, and a
//! uniform [`Measure`] interface consumed by the axiom checkers.
//!
//! Every measure except eigenvector centrality is generic over [`Scalar`] and
//! is normally run with exact rationals. Unreachable nodes contribute zero to
//! every distance-based sum.

mod betweenness;
mod classic;
mod eigen;
mod registry;

pub use betweenness::{betweenness_centrality, betweenness_oracle, ORACLE_MAX_NODES};
pub use classic::{
    closeness_centrality, compare_ddc_lex, ddc_profile, decaying_degree_centrality,
    degree_centrality, uniform_centrality, weighted_degree_centrality, DdcProfile,
};
pub use eigen::{eigenvector_centrality, eigenvector_centrality_with, EigenConfig, EigenResult};
pub use registry::{lookup_measure, measure_registry, registry_with, FnMeasure, HandleInner, MeasureHandle, MeasureKind, RegistryParams};

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::scalar::{Scalar, Score, ScoreKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("power iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("{what}: n = {n} exceeds the supported maximum {max}")]
    BudgetExceeded { what: &'static str, n: usize, max: usize },
    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Per-node scores produced by one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector<T> {
    pub measure: String,
    pub kind: ScoreKind,
    pub values: Vec<T>,
}

impl<T: Scalar> CentralityVector<T> {
    pub fn new(measure: impl Into<String>, values: Vec<T>) -> Self {
        CentralityVector { measure: measure.into(), kind: T::KIND, values }
    }

    pub fn to_scores(&self) -> CentralityVector<Score> {
        CentralityVector {
            measure: self.measure.clone(),
            kind: self.kind,
            values: self.values.iter().map(Scalar::to_score).collect(),
        }
    }
}

impl<T> CentralityVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<T> std::ops::Index<usize> for CentralityVector<T> {
    type Output = T;

    fn index(&self, u: usize) -> &T {
        &self.values[u]
    }
}

impl Serialize for CentralityVector<Score> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CentralityVector", 3)?;
        s.serialize_field("measure", &self.measure)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("values", &self.values)?;
        s.end()
    }
}

/// A centrality index: a deterministic map from a graph to one score per node.
pub trait Measure: Send + Sync {
    type Value: Scalar;

    fn name(&self) -> &str;

    fn evaluate(&self, g: &Graph) -> Result<Vec<Self::Value>, MeasureError>;
}

impl<M: Measure + ?Sized> Measure for &M {
    type Value = M::Value;

    fn name(&self) -> &str {
        (**self).name()
    }

    fn evaluate(&self, g: &Graph) -> Result<Vec<Self::Value>, MeasureError> {
        (**self).evaluate(g)
    }
}

impl<M: Measure + ?Sized> Measure for Arc<M> {
    type Value = M::Value;

    fn name(&self) -> &str {
        (**self).name()
    }

    fn evaluate(&self, g: &Graph) -> Result<Vec<Self::Value>, MeasureError> {
        (**self).evaluate(g)
    }
}
