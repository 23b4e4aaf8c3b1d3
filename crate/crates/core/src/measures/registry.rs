use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::graph::Graph;
use crate::scalar::{Scalar, Score};
use crate::Exact;

use super::{
    betweenness_centrality, closeness_centrality, decaying_degree_centrality, degree_centrality,
    eigenvector_centrality_with, uniform_centrality, weighted_degree_centrality, CentralityVector,
    EigenConfig, Measure, MeasureError,
};

/// A measure backed by a closure.
pub struct FnMeasure<T, F> {
    name: String,
    f: F,
    _value: PhantomData<fn() -> T>,
}

impl<T, F> FnMeasure<T, F>
where
    T: Scalar,
    F: Fn(&Graph) -> Result<Vec<T>, MeasureError> + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnMeasure { name: name.into(), f, _value: PhantomData }
    }
}

impl<T, F> Measure for FnMeasure<T, F>
where
    T: Scalar,
    F: Fn(&Graph) -> Result<Vec<T>, MeasureError> + Send + Sync,
{
    type Value = T;

    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, g: &Graph) -> Result<Vec<T>, MeasureError> {
        (self.f)(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Exact,
    Numeric,
}

#[derive(Clone)]
pub enum HandleInner {
    Exact(Arc<dyn Measure<Value = Exact>>),
    Float(Arc<dyn Measure<Value = f64>>),
}

/// A named measure with its parameters, invocable without knowing its scalar type.
#[derive(Clone)]
pub struct MeasureHandle {
    pub name: String,
    pub abbreviation: String,
    pub parameters: Vec<(String, String)>,
    inner: HandleInner,
}

impl fmt::Debug for MeasureHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureHandle")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("parameters", &self.parameters)
            .finish()
    }
}

impl MeasureHandle {
    pub fn exact(name: &str, abbreviation: &str, measure: impl Measure<Value = Exact> + 'static) -> Self {
        MeasureHandle {
            name: name.into(),
            abbreviation: abbreviation.into(),
            parameters: Vec::new(),
            inner: HandleInner::Exact(Arc::new(measure)),
        }
    }

    pub fn numeric(name: &str, abbreviation: &str, measure: impl Measure<Value = f64> + 'static) -> Self {
        MeasureHandle {
            name: name.into(),
            abbreviation: abbreviation.into(),
            parameters: Vec::new(),
            inner: HandleInner::Float(Arc::new(measure)),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn kind(&self) -> MeasureKind {
        match self.inner {
            HandleInner::Exact(_) => MeasureKind::Exact,
            HandleInner::Float(_) => MeasureKind::Numeric,
        }
    }

    pub fn inner(&self) -> &HandleInner {
        &self.inner
    }

    pub fn evaluate(&self, g: &Graph) -> Result<CentralityVector<Score>, MeasureError> {
        match &self.inner {
            HandleInner::Exact(m) => Ok(CentralityVector::new(self.name.clone(), m.evaluate(g)?).to_scores()),
            HandleInner::Float(m) => Ok(CentralityVector::new(self.name.clone(), m.evaluate(g)?).to_scores()),
        }
    }

    /// Case-insensitive match on the full name or the abbreviation.
    pub fn answers_to(&self, query: &str) -> bool {
        self.name.eq_ignore_ascii_case(query) || self.abbreviation.eq_ignore_ascii_case(query)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryParams {
    pub beta: Exact,
    pub ec: EigenConfig<f64>,
}

impl Default for RegistryParams {
    fn default() -> Self {
        RegistryParams { beta: Exact::one(), ec: EigenConfig::default() }
    }
}

/// The seven measures with default parameters (`beta = 1`, eigen tolerance `1e-12`),
/// in the order UC, DC, CC, BC, WDC, EC, DDC.
pub fn measure_registry() -> Vec<MeasureHandle> {
    registry_with(&RegistryParams::default()).expect("default parameters are valid")
}

pub fn registry_with(params: &RegistryParams) -> Result<Vec<MeasureHandle>, MeasureError> {
    let beta = params.beta.clone();
    // validate once up front
    uniform_centrality(&Graph::empty(0), beta.clone())?;
    let ec = params.ec;
    if ec.tol.is_nan() || ec.tol <= 0.0 {
        return Err(MeasureError::InvalidParameter("eigenvector tolerance must be positive".into()));
    }
    Ok(vec![
        MeasureHandle::exact(
            "uniform",
            "UC",
            FnMeasure::new("uniform", move |g: &Graph| Ok(uniform_centrality(g, beta.clone())?.values)),
        )
        .with_parameter("beta", &params.beta),
        MeasureHandle::exact("degree", "DC", FnMeasure::new("degree", |g: &Graph| Ok(degree_centrality(g).values))),
        MeasureHandle::exact(
            "closeness",
            "CC",
            FnMeasure::new("closeness", |g: &Graph| Ok(closeness_centrality(g).values)),
        ),
        MeasureHandle::exact(
            "betweenness",
            "BC",
            FnMeasure::new("betweenness", |g: &Graph| Ok(betweenness_centrality(g).values)),
        ),
        MeasureHandle::exact(
            "weighted-degree",
            "WDC",
            FnMeasure::new("weighted-degree", |g: &Graph| Ok(weighted_degree_centrality(g).values)),
        ),
        MeasureHandle::numeric(
            "eigenvector",
            "EC",
            FnMeasure::new("eigenvector", move |g: &Graph| Ok(eigenvector_centrality_with(g, ec)?.vector)),
        )
        .with_parameter("tol", ec.tol),
        MeasureHandle::exact(
            "decaying-degree",
            "DDC",
            FnMeasure::new("decaying-degree", |g: &Graph| Ok(decaying_degree_centrality(g).values)),
        ),
    ])
}

pub fn lookup_measure<'a>(registry: &'a [MeasureHandle], query: &str) -> Result<&'a MeasureHandle, MeasureError> {
    registry
        .iter()
        .find(|m| m.answers_to(query))
        .ok_or_else(|| MeasureError::UnknownMeasure(query.into()))
}
