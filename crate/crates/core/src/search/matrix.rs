use serde::Serialize;

use crate::axioms::{AxiomId, CheckConfig, Status, Witness};
use crate::measures::MeasureHandle;

use super::{all_fixtures, scan, SearchBudget, SearchError, SearchMode};

/// Reference verdicts per measure, axioms 1 to 6 (`true` = satisfied).
pub const REFERENCE_VERDICTS: [(&str, [bool; 6]); 7] = [
    ("UC", [true, true, false, false, false, false]),
    ("DC", [true, true, true, true, false, false]),
    ("CC", [true, true, true, true, false, false]),
    ("BC", [true, true, true, false, false, false]),
    ("WDC", [true, true, true, true, false, false]),
    ("EC", [true, false, true, false, false, true]),
    ("DDC", [true, false, true, true, true, false]),
];

pub fn reference_status(abbreviation: &str, axiom: AxiomId) -> Option<Status> {
    REFERENCE_VERDICTS
        .iter()
        .find(|(a, _)| a.eq_ignore_ascii_case(abbreviation))
        .map(|(_, row)| if row[axiom.number() - 1] { Status::Satisfied } else { Status::Violated })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Evidence {
    /// Violation shown on a catalogued fixture.
    Fixture { id: String, witness: Witness },
    /// Violation found by the search.
    Search { n: usize, index: u64, witness: Witness },
    /// No violation among every graph of the exhaustive scan.
    Exhaustive { n_max: usize, dedup_isomorphic: bool, graphs: usize },
    /// No violation among the random sample.
    Sampled { n_max: usize, samples: usize, edge_probability: f64, seed: u64 },
}

impl Evidence {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Evidence::Fixture { witness, .. } | Evidence::Search { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Evidence::Fixture { id, .. } => format!("witness on fixture {id}"),
            Evidence::Search { n, index, .. } => format!("witness found by search (n = {n}, graph #{index})"),
            Evidence::Exhaustive { n_max, dedup_isomorphic, graphs } => format!(
                "no violation in {graphs} {} with 2 <= n <= {n_max}",
                if *dedup_isomorphic { "isomorphism classes" } else { "labeled graphs" }
            ),
            Evidence::Sampled { n_max, samples, edge_probability, seed } => format!(
                "no violation in {samples} random G(n, {edge_probability}) graphs, 2 <= n <= {n_max}, seed {seed}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixCell {
    pub axiom: AxiomId,
    pub status: Status,
    /// Satisfied only because the axiom's precondition never fired.
    pub vacuous: bool,
    pub numeric: bool,
    /// Graphs of the scan on which the precondition never fired.
    pub vacuous_graphs: usize,
    pub evidence: Evidence,
    pub reference: Option<Status>,
    pub note: Option<String>,
}

impl MatrixCell {
    pub fn agrees(&self) -> Option<bool> {
        self.reference.map(|r| r == self.status)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixRow {
    pub measure: String,
    pub abbreviation: String,
    pub cells: Vec<MatrixCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatisfiabilityMatrix {
    pub budget: SearchBudget,
    pub scope: String,
    pub rows: Vec<MatrixRow>,
}

impl SatisfiabilityMatrix {
    pub fn cell(&self, abbreviation: &str, axiom: AxiomId) -> Option<&MatrixCell> {
        self.rows
            .iter()
            .find(|r| r.abbreviation.eq_ignore_ascii_case(abbreviation))
            .and_then(|r| r.cells.iter().find(|c| c.axiom == axiom))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&MatrixRow, &MatrixCell)> {
        self.rows.iter().flat_map(|r| r.cells.iter().map(move |c| (r, c)))
    }

    /// `(agreeing, compared)` counts against the reference verdicts.
    pub fn agreement(&self) -> (usize, usize) {
        let compared: Vec<bool> = self.cells().filter_map(|(_, c)| c.agrees()).collect();
        (compared.iter().filter(|&&a| a).count(), compared.len())
    }
}

const VACUOUS_NOTE: &str = "vacuously satisfied: the precondition never holds for this measure \
(a constant measure never has strictly dominating neighbours), while the reference lists a violation";

/// Fills every (measure, axiom) cell: fixture witnesses first, then the
/// budget's search; cells without a violation record the scope searched.
pub fn build_satisfiability_matrix(
    registry: &[MeasureHandle],
    budget: &SearchBudget,
    check: &CheckConfig,
) -> Result<SatisfiabilityMatrix, SearchError> {
    budget.validate()?;
    let fixtures = all_fixtures();
    let mut rows = Vec::new();
    for m in registry {
        let mut cells = Vec::new();
        for axiom in AxiomId::ALL {
            let mut from_fixture = None;
            for f in &fixtures {
                if f.violations().any(|(name, a)| a == axiom && m.answers_to(name)) {
                    let v = m.check(axiom, &f.graph, check)?;
                    if let Some(witness) = v.witness {
                        from_fixture = Some(Evidence::Fixture { id: f.id.into(), witness });
                        break;
                    }
                }
            }
            let (status, vacuous, vacuous_graphs, evidence) = match from_fixture {
                Some(e) => (Status::Violated, false, 0, e),
                None => {
                    let out = scan(m, axiom, budget, check, false)?;
                    match out.found {
                        Some(found) => (
                            Status::Violated,
                            false,
                            out.vacuous_graphs,
                            Evidence::Search { n: found.n, index: found.index, witness: found.witness },
                        ),
                        None => {
                            let evidence = match budget.mode {
                                SearchMode::Exhaustive => Evidence::Exhaustive {
                                    n_max: budget.n_max,
                                    dedup_isomorphic: budget.dedup_isomorphic,
                                    graphs: out.graphs_checked,
                                },
                                SearchMode::Random => Evidence::Sampled {
                                    n_max: budget.n_max,
                                    samples: out.graphs_checked,
                                    edge_probability: budget.edge_probability,
                                    seed: budget.seed,
                                },
                            };
                            let all_vacuous = out.graphs_checked > 0 && out.vacuous_graphs == out.graphs_checked;
                            (Status::Satisfied, all_vacuous, out.vacuous_graphs, evidence)
                        }
                    }
                }
            };
            let reference = reference_status(&m.abbreviation, axiom);
            let note = match reference {
                Some(r) if r != status && vacuous => Some(VACUOUS_NOTE.to_string()),
                Some(r) if r != status => Some(format!("disagrees with the reference verdict ({:?})", r)),
                _ => None,
            };
            cells.push(MatrixCell {
                axiom,
                status,
                vacuous,
                numeric: m.kind() == crate::measures::MeasureKind::Numeric,
                vacuous_graphs,
                evidence,
                reference,
                note,
            });
        }
        rows.push(MatrixRow { measure: m.name.clone(), abbreviation: m.abbreviation.clone(), cells });
    }
    Ok(SatisfiabilityMatrix { budget: budget.clone(), scope: budget.scope(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::measure_registry;

    #[test]
    fn reference_rows() {
        assert_eq!(reference_status("DDC", AxiomId::DiminishingImpact), Some(Status::Satisfied));
        assert_eq!(reference_status("uc", AxiomId::StructuralConsistency), Some(Status::Violated));
        assert_eq!(reference_status("PR", AxiomId::Locality), None);
    }

    #[test]
    fn small_matrix_reproduces_reference_rows() {
        let reg = measure_registry();
        let m = build_satisfiability_matrix(&reg, &SearchBudget::exhaustive(4), &CheckConfig::default()).unwrap();
        let marks = |abbr: &str| -> Vec<&str> {
            AxiomId::ALL.iter().map(|&a| m.cell(abbr, a).unwrap().status.mark()).collect()
        };
        assert_eq!(marks("DDC"), ["✓", "✗", "✓", "✓", "✓", "✗"]);
        assert_eq!(marks("WDC"), ["✓", "✓", "✓", "✓", "✗", "✗"]);
        let uc6 = m.cell("UC", AxiomId::StructuralConsistency).unwrap();
        assert!(uc6.vacuous && uc6.note.is_some());
        assert_eq!(m.agreement(), (41, 42));
        for (row, cell) in m.cells() {
            if let Some(w) = cell.evidence.witness() {
                let h = reg.iter().find(|h| h.abbreviation == row.abbreviation).unwrap();
                assert!(h.replay(w).unwrap(), "{} {:?}", row.abbreviation, cell.axiom);
            }
        }
    }
}
