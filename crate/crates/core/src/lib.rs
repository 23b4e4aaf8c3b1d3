//! Node centrality measures on simple undirected graphs, the six centrality
//! axioms as executable checks, and tooling to search for counterexamples.

pub mod axioms;
pub mod graph;
pub mod measures;
pub mod scalar;
pub mod search;

pub type Exact = num_rational::BigRational;
