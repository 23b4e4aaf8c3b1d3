use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::measures::MeasureHandle;

use super::{AxiomError, AxiomId, AxiomVerdict, CheckConfig, Status, Witness};

/// Graphs checked in parallel before looking for a violation.
const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub check: CheckConfig,
    pub axioms: Vec<AxiomId>,
    /// Keep going after the first violation and count every violating graph.
    pub count_all: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { check: CheckConfig::default(), axioms: AxiomId::ALL.to_vec(), count_all: false }
    }
}

/// One axiom's verdict over a whole stream of graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateVerdict {
    pub axiom: AxiomId,
    pub measure: String,
    pub status: Status,
    /// Every examined graph was vacuous for this axiom.
    pub vacuous: bool,
    pub numeric: bool,
    pub graphs_checked: usize,
    pub vacuous_graphs: usize,
    pub violating_graphs: usize,
    /// Stream position of the graph the witness comes from.
    pub first_violation: Option<usize>,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub measure: String,
    pub verdicts: Vec<AggregateVerdict>,
}

impl SuiteReport {
    pub fn verdict(&self, axiom: AxiomId) -> Option<&AggregateVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    /// `✓`/`✗` per axiom in the configured order.
    pub fn marks(&self) -> Vec<&'static str> {
        self.verdicts.iter().map(|v| v.status.mark()).collect()
    }
}

/// Runs the configured axiom checkers over every graph. Graphs are checked in
/// parallel; the witness kept is always the one from the lowest stream index.
pub fn run_axiom_suite(
    m: &MeasureHandle,
    graphs: impl IntoIterator<Item = Graph>,
    config: &SuiteConfig,
) -> Result<SuiteReport, AxiomError> {
    let graphs: Vec<Graph> = graphs.into_iter().collect();
    let verdicts = config
        .axioms
        .iter()
        .map(|&axiom| aggregate(m, axiom, &graphs, config))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport { measure: m.name.clone(), verdicts })
}

fn aggregate(m: &MeasureHandle, axiom: AxiomId, graphs: &[Graph], config: &SuiteConfig) -> Result<AggregateVerdict, AxiomError> {
    let mut agg = AggregateVerdict {
        axiom,
        measure: m.name.clone(),
        status: Status::Satisfied,
        vacuous: true,
        numeric: m.kind() == crate::measures::MeasureKind::Numeric,
        graphs_checked: 0,
        vacuous_graphs: 0,
        violating_graphs: 0,
        first_violation: None,
        witness: None,
    };
    for (c, chunk) in graphs.chunks(CHUNK).enumerate() {
        let results: Vec<AxiomVerdict> = chunk
            .par_iter()
            .enumerate()
            .map(|(i, g)| {
                let mut check = config.check.clone();
                // vary the permutation sample per graph, reproducibly
                check.seed = check.seed.wrapping_add((c * CHUNK + i) as u64);
                m.check(axiom, g, &check)
            })
            .collect::<Result<_, _>>()?;
        for (i, v) in results.into_iter().enumerate() {
            agg.graphs_checked += 1;
            agg.vacuous_graphs += usize::from(v.vacuous);
            agg.vacuous &= v.vacuous;
            if v.is_violated() {
                agg.violating_graphs += 1;
                if agg.witness.is_none() {
                    agg.status = Status::Violated;
                    agg.first_violation = Some(c * CHUNK + i);
                    agg.witness = v.witness;
                }
                if !config.count_all {
                    return Ok(agg);
                }
            }
        }
    }
    Ok(agg)
}
