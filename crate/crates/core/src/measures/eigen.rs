//! Eigenvector centrality by shifted power iteration.
//!
//! Each connected component is iterated separately on `A_C + I` from the
//! all-ones vector; the shift keeps bipartite components from oscillating.
//! The components attaining the largest eigenvalue (within `TIE_TOLERANCE`)
//! carry the result. When several tie, their Perron vectors are combined with
//! weights equal to their projections onto the all-ones vector, which is the
//! limit whole-graph power iteration would reach and keeps the measure
//! independent of node labels. Nodes outside the chosen components score 0.

use num_traits::Float;

use crate::graph::{connected_components, Graph};
use crate::scalar::Scalar;

use super::MeasureError;

/// Eigenvalues closer than this (relative to `max(1, lambda)`) count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig<T> {
    pub tol: T,
    pub max_iter: usize,
}

impl Default for EigenConfig<f64> {
    fn default() -> Self {
        EigenConfig { tol: 1e-12, max_iter: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult<T> {
    pub lambda_max: T,
    /// Unit 2-norm, entrywise non-negative; all zero for an edgeless graph.
    pub vector: Vec<T>,
    /// Indices (into [`connected_components`]) of the components carrying the vector.
    pub components: Vec<usize>,
    pub component_eigenvalues: Vec<T>,
    /// Set for edgeless graphs and when several components tie.
    pub degenerate: bool,
    pub iterations: usize,
}

impl<T: Float> EigenResult<T> {
    /// `||A x - lambda x||_2`
    pub fn residual(&self, g: &Graph) -> T {
        g.nodes()
            .map(|u| {
                let ax = g.neighbors(u).iter().fold(T::zero(), |acc, &w| acc + self.vector[w]);
                let r = ax - self.lambda_max * self.vector[u];
                r * r
            })
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn norm(&self) -> T {
        self.vector.iter().fold(T::zero(), |a, &x| a + x * x).sqrt()
    }
}

pub fn eigenvector_centrality<T: Float + Scalar>(g: &Graph, tol: T) -> Result<EigenResult<T>, MeasureError> {
    eigenvector_centrality_with(g, EigenConfig { tol, max_iter: 100_000 })
}

pub fn eigenvector_centrality_with<T: Float + Scalar>(
    g: &Graph,
    config: EigenConfig<T>,
) -> Result<EigenResult<T>, MeasureError> {
    if config.tol.is_nan() || config.tol <= T::zero() {
        return Err(MeasureError::InvalidParameter("eigenvector tolerance must be positive".into()));
    }
    let partition = connected_components(g);
    let mut iterations = 0;
    let mut perron: Vec<(T, Vec<T>)> = Vec::with_capacity(partition.len());
    for block in &partition.blocks {
        let (lambda, x, iters) = component_power_iteration(g, block, &config)?;
        iterations += iters;
        perron.push((lambda, x));
    }
    let component_eigenvalues: Vec<T> = perron.iter().map(|(l, _)| *l).collect();
    let lambda_max = component_eigenvalues.iter().copied().fold(T::zero(), T::max);

    let mut vector = vec![T::zero(); g.n()];
    if g.edge_count() == 0 {
        return Ok(EigenResult {
            lambda_max: T::zero(),
            vector,
            components: Vec::new(),
            component_eigenvalues,
            degenerate: true,
            iterations,
        });
    }

    let tie = T::from(TIE_TOLERANCE).expect("tolerance representable") * lambda_max.max(T::one());
    let components: Vec<usize> = (0..perron.len()).filter(|&c| lambda_max - perron[c].0 <= tie).collect();
    for &c in &components {
        let x = &perron[c].1;
        let weight = x.iter().fold(T::zero(), |a, &b| a + b);
        for (&node, &xi) in partition.blocks[c].iter().zip(x) {
            vector[node] = weight * xi;
        }
    }
    let norm = vector.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    for x in &mut vector {
        *x = *x / norm;
    }
    // Rayleigh quotient of the combined vector
    let lambda_max = rayleigh(g, &vector);
    Ok(EigenResult {
        lambda_max,
        vector,
        degenerate: components.len() > 1,
        components,
        component_eigenvalues,
        iterations,
    })
}

fn rayleigh<T: Float>(g: &Graph, x: &[T]) -> T {
    g.edges().iter().fold(T::zero(), |acc, &(u, v)| acc + (T::one() + T::one()) * x[u] * x[v])
}

/// Returns `(lambda, unit Perron vector in block order, iterations)`.
fn component_power_iteration<T: Float>(
    g: &Graph,
    block: &[usize],
    config: &EigenConfig<T>,
) -> Result<(T, Vec<T>, usize), MeasureError> {
    let k = block.len();
    if k == 1 {
        return Ok((T::zero(), vec![T::one()], 0));
    }
    let local = |node: usize| block.binary_search(&node).expect("neighbour inside component");
    let adj: Vec<Vec<usize>> = block.iter().map(|&u| g.neighbors(u).iter().map(|&w| local(w)).collect()).collect();
    let start = T::one() / T::from(k).expect("size representable").sqrt();
    let mut x = vec![start; k];
    for it in 1..=config.max_iter {
        let mut y: Vec<T> = (0..k).map(|i| adj[i].iter().fold(x[i], |acc, &j| acc + x[j])).collect();
        let norm = y.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
        for v in &mut y {
            *v = *v / norm;
        }
        let change = x.iter().zip(&y).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()));
        x = y;
        if change <= config.tol {
            let lambda = (0..k)
                .map(|i| adj[i].iter().fold(T::zero(), |acc, &j| acc + x[j]) * x[i])
                .fold(T::zero(), |a, b| a + b);
            return Ok((lambda, x, it));
        }
    }
    Err(MeasureError::ConvergenceFailure { iterations: config.max_iter })
}
