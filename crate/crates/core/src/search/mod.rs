//! Counterexample mining over small graphs and the measure-by-axiom
//! satisfiability matrix.
//!
//! Exhaustive scans go through `n = 2..=n_max` in increasing order and, within
//! each `n`, through increasing edge bitmasks (or canonical class
//! representatives in the same order). Random scans draw `G(n, p)` graphs from
//! a seeded generator. Graphs are checked in parallel chunks; results are
//! merged in stream order, so the first witness is the same at any thread count.

mod export;
mod fixtures;
mod matrix;

pub use export::{export_fixtures, fixture_manifest};
pub use fixtures::{
    all_fixtures, fixture, fixture_ids, replay_fixture, Expectation, ExpectationOutcome, Expected, Fixture,
    FixtureReplay, Relation, Stage, CLOSED_FORM_TOLERANCE, EIGENVALUE_TOLERANCE, PRINTED_TOLERANCE,
};
pub use matrix::{
    build_satisfiability_matrix, reference_status, Evidence, MatrixCell, MatrixRow, SatisfiabilityMatrix,
    REFERENCE_VERDICTS,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::axioms::{AxiomError, AxiomId, AxiomVerdict, CheckConfig, Witness};
use crate::graph::{isomorphism_classes, pair_count, Graph, GraphError, LabeledGraphs, MAX_DEDUP_NODES, MAX_LABELED_NODES};
use crate::measures::{MeasureError, MeasureHandle};

/// Largest graph drawn in random mode.
pub const MAX_RANDOM_NODES: usize = 64;
/// Graphs checked in parallel before results are merged.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("invalid fixture: {0}")]
    InvalidFixture(String),
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
    #[error("{what}: n = {n} exceeds the supported maximum {max}")]
    BudgetExceeded { what: &'static str, n: usize, max: usize },
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchBudget {
    pub n_max: usize,
    pub mode: SearchMode,
    pub random_samples: usize,
    pub edge_probability: f64,
    pub seed: u64,
    /// Exhaustive mode: one representative per isomorphism class.
    pub dedup_isomorphic: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            n_max: 5,
            mode: SearchMode::Exhaustive,
            random_samples: 1000,
            edge_probability: 0.5,
            seed: 0,
            dedup_isomorphic: false,
        }
    }
}

impl SearchBudget {
    pub fn exhaustive(n_max: usize) -> Self {
        SearchBudget { n_max, ..Default::default() }
    }

    pub fn random(n_max: usize, samples: usize, seed: u64) -> Self {
        SearchBudget { n_max, mode: SearchMode::Random, random_samples: samples, seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if !(self.edge_probability > 0.0 && self.edge_probability < 1.0) {
            return Err(SearchError::InvalidBudget(format!(
                "edge probability must lie strictly between 0 and 1, got {}",
                self.edge_probability
            )));
        }
        match self.mode {
            SearchMode::Exhaustive => {
                let (what, max) = if self.dedup_isomorphic {
                    ("exhaustive search over isomorphism classes", MAX_DEDUP_NODES)
                } else {
                    ("exhaustive search over labeled graphs", MAX_LABELED_NODES)
                };
                if self.n_max > max {
                    return Err(SearchError::BudgetExceeded { what, n: self.n_max, max });
                }
            }
            SearchMode::Random => {
                if self.n_max > MAX_RANDOM_NODES {
                    return Err(SearchError::BudgetExceeded {
                        what: "random search",
                        n: self.n_max,
                        max: MAX_RANDOM_NODES,
                    });
                }
                if self.n_max < 2 {
                    return Err(SearchError::InvalidBudget("random search needs n_max >= 2".into()));
                }
            }
        }
        Ok(())
    }

    /// Human-readable scope, e.g. `all labeled graphs with 2 <= n <= 5`.
    pub fn scope(&self) -> String {
        match self.mode {
            SearchMode::Exhaustive if self.dedup_isomorphic => {
                format!("all isomorphism classes with 2 <= n <= {}", self.n_max)
            }
            SearchMode::Exhaustive => format!("all labeled graphs with 2 <= n <= {}", self.n_max),
            SearchMode::Random => format!(
                "{} random G(n, {}) graphs with 2 <= n <= {}, seed {}",
                self.random_samples, self.edge_probability, self.n_max, self.seed
            ),
        }
    }
}

/// A witness together with where in the scan it was found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundWitness {
    pub n: usize,
    /// Bitmask (labeled), class position (dedup) or sample number (random).
    pub index: u64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutcome {
    pub found: Option<FoundWitness>,
    pub graphs_checked: usize,
    pub vacuous_graphs: usize,
}

struct Item {
    n: usize,
    index: u64,
    graph: Graph,
}

/// Stream of chunks of graphs in scan order.
fn chunks(budget: &SearchBudget) -> Result<Box<dyn Iterator<Item = Vec<Item>>>, SearchError> {
    budget.validate()?;
    let n_max = budget.n_max;
    match budget.mode {
        SearchMode::Exhaustive if budget.dedup_isomorphic => {
            let mut all = Vec::new();
            for n in 2..=n_max {
                let classes = isomorphism_classes(n)?;
                let items: Vec<Item> =
                    classes.iter().enumerate().map(|(i, g)| Item { n, index: i as u64, graph: g.clone() }).collect();
                all.push(items);
            }
            Ok(Box::new(all.into_iter().flat_map(split)))
        }
        SearchMode::Exhaustive => {
            let iter = (2..=n_max).flat_map(|n| {
                let total = 1u64 << pair_count(n);
                (0..total).step_by(CHUNK).map(move |start| {
                    let end = (start + CHUNK as u64).min(total);
                    LabeledGraphs::range(n, start, end)
                        .expect("n within the labeled limit")
                        .zip(start..end)
                        .map(|(graph, index)| Item { n, index, graph })
                        .collect()
                })
            });
            Ok(Box::new(iter))
        }
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            let (samples, p) = (budget.random_samples, budget.edge_probability);
            let mut drawn = 0usize;
            Ok(Box::new(std::iter::from_fn(move || {
                if drawn >= samples {
                    return None;
                }
                let take = CHUNK.min(samples - drawn);
                let chunk = (0..take)
                    .map(|k| {
                        let graph = random_graph(&mut rng, n_max, p);
                        Item { n: graph.n(), index: (drawn + k) as u64, graph }
                    })
                    .collect();
                drawn += take;
                Some(chunk)
            })))
        }
    }
}

fn split(items: Vec<Item>) -> Vec<Vec<Item>> {
    let mut out = Vec::new();
    let mut rest = items.into_iter().peekable();
    while rest.peek().is_some() {
        out.push(rest.by_ref().take(CHUNK).collect());
    }
    out
}

/// `G(n, p)` with `n` uniform in `2..=n_max`.
pub fn random_graph(rng: &mut impl Rng, n_max: usize, p: f64) -> Graph {
    let n = rng.gen_range(2..=n_max);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated pairs are simple")
}

/// Scans the budget's graphs with one axiom checker. Stops at the first
/// violation unless `count_all` is set; counts cover every graph examined.
pub fn scan(
    m: &MeasureHandle,
    axiom: AxiomId,
    budget: &SearchBudget,
    check: &CheckConfig,
    count_all: bool,
) -> Result<ScanOutcome, SearchError> {
    let mut outcome = ScanOutcome { found: None, graphs_checked: 0, vacuous_graphs: 0 };
    let mut position = 0u64;
    for chunk in chunks(budget)? {
        let base = position;
        position += chunk.len() as u64;
        let verdicts: Vec<AxiomVerdict> = chunk
            .par_iter()
            .enumerate()
            .map(|(k, item)| {
                let mut cfg = check.clone();
                cfg.seed = check.seed.wrapping_add(base + k as u64);
                m.check(axiom, &item.graph, &cfg)
            })
            .collect::<Result<_, _>>()?;
        for (item, v) in chunk.into_iter().zip(verdicts) {
            outcome.graphs_checked += 1;
            outcome.vacuous_graphs += usize::from(v.vacuous);
            if let Some(witness) = v.witness {
                if outcome.found.is_none() {
                    outcome.found = Some(FoundWitness { n: item.n, index: item.index, witness });
                }
                if !count_all {
                    return Ok(outcome);
                }
            }
        }
    }
    Ok(outcome)
}

/// First witness in scan order, or `None` when the budget holds no violation.
pub fn find_counterexample(
    m: &MeasureHandle,
    axiom: AxiomId,
    budget: &SearchBudget,
    check: &CheckConfig,
) -> Result<Option<FoundWitness>, SearchError> {
    Ok(scan(m, axiom, budget, check, false)?.found)
}
