//! Hand-built graphs on which each measure's behaviour against the axioms is
//! known in advance, with the values expected on them.
// printed four-decimal values are data here, not stand-ins for constants
#![allow(clippy::approx_constant)]

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::axioms::{AxiomId, CheckConfig, Status};
use crate::graph::{induced_component, Graph, Node};
use crate::measures::{ddc_profile, eigenvector_centrality_with, lookup_measure, EigenConfig, MeasureHandle};
use crate::scalar::{parse_rational, Score};

use super::SearchError;

/// Tolerance for eigenvector values quoted to four decimals.
pub const PRINTED_TOLERANCE: f64 = 1e-3;
/// Tolerance for closed-form eigenvector values.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;
/// Tolerance for eigenvalues known exactly.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Expected {
    Exact { value: String },
    Approx { value: f64, tolerance: f64 },
}

impl Expected {
    fn exact(text: &str) -> Self {
        assert!(parse_rational(text).is_some(), "bad fraction literal {text}");
        Expected::Exact { value: text.into() }
    }

    fn approx(value: f64, tolerance: f64) -> Self {
        Expected::Approx { value, tolerance }
    }

    pub fn accepts(&self, observed: &Score) -> bool {
        match (self, observed) {
            (Expected::Exact { value }, Score::Exact(r)) => parse_rational(value).as_ref() == Some(r),
            (Expected::Approx { value, tolerance }, s) => (s.approx_f64() - value).abs() <= *tolerance,
            _ => false,
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Exact { value } => f.write_str(value),
            Expected::Approx { value, tolerance } => write!(f, "{value} ± {tolerance:e}"),
        }
    }
}

/// Which graph an expected value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// The fixture graph as stored.
    Before,
    /// The fixture graph with its added edge.
    After,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Expectation {
    /// The axiom check on the fixture graph ends with this status.
    Verdict { measure: String, axiom: AxiomId, status: Status },
    Value { measure: String, stage: Stage, node: String, expected: Expected },
    /// `|F(G + e) - F(G)|` at a node.
    Delta { measure: String, node: String, expected: Expected },
    /// Value at a node inside its own connected component, evaluated alone.
    Local { measure: String, node: String, expected: Expected },
    Order { measure: String, stage: Stage, left: String, right: String, relation: Relation },
    /// Leading hop-wise degree sums around a node.
    Profile { node: String, sums: Vec<u64> },
    Eigenvalue { stage: Stage, expected: Expected },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        }
    }

    fn of(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Greater,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stage = |s: &Stage| match s {
            Stage::Before => "G",
            Stage::After => "G'",
        };
        match self {
            Expectation::Verdict { measure, axiom, status } => write!(f, "{measure} {axiom}: {status:?}"),
            Expectation::Value { measure, stage: s, node, expected } => {
                write!(f, "{measure}_{node}({}) = {expected}", stage(s))
            }
            Expectation::Delta { measure, node, expected } => write!(f, "|Δ{measure}_{node}| = {expected}"),
            Expectation::Local { measure, node, expected } => write!(f, "{measure}_{node}(G[K_{node}]) = {expected}"),
            Expectation::Order { measure, stage: s, left, right, relation } => {
                write!(f, "{measure}_{left}({0}) {1} {measure}_{right}({0})", stage(s), relation.symbol())
            }
            Expectation::Profile { node, sums } => write!(f, "degree profile of {node} starts {sums:?}"),
            Expectation::Eigenvalue { stage: s, expected } => write!(f, "λ_max({}) = {expected}", stage(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fixture {
    pub id: &'static str,
    pub description: &'static str,
    pub graph: Graph,
    pub added_edge: Option<(Node, Node)>,
    /// Node label and index, in index order.
    pub labels: Vec<(String, Node)>,
    pub expected: Vec<Expectation>,
}

impl Fixture {
    pub fn node(&self, label: &str) -> Option<Node> {
        self.labels.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }

    pub fn label(&self, node: Node) -> Option<&str> {
        self.labels.iter().find(|(_, v)| *v == node).map(|(l, _)| l.as_str())
    }

    /// The fixture graph with the added edge, if there is one.
    pub fn modified(&self) -> Option<Graph> {
        self.added_edge.map(|(u, v)| self.graph.add_edge(u, v).expect("fixture edge is a non-edge"))
    }

    /// `(measure, axiom)` pairs this fixture is a counterexample for.
    pub fn violations(&self) -> impl Iterator<Item = (&str, AxiomId)> {
        self.expected.iter().filter_map(|e| match e {
            Expectation::Verdict { measure, axiom, status: Status::Violated } => Some((measure.as_str(), *axiom)),
            _ => None,
        })
    }
}

struct Builder {
    id: &'static str,
    description: &'static str,
    labels: Vec<&'static str>,
    edges: Vec<(&'static str, &'static str)>,
    added: Option<(&'static str, &'static str)>,
    expected: Vec<Expectation>,
}

impl Builder {
    fn new(id: &'static str, description: &'static str, labels: &[&'static str]) -> Self {
        Builder { id, description, labels: labels.to_vec(), edges: Vec::new(), added: None, expected: Vec::new() }
    }

    fn edges(mut self, edges: &[(&'static str, &'static str)]) -> Self {
        self.edges.extend_from_slice(edges);
        self
    }

    fn add(mut self, u: &'static str, v: &'static str) -> Self {
        self.added = Some((u, v));
        self
    }

    fn violates(mut self, measure: &str, axiom: AxiomId) -> Self {
        self.expected.push(Expectation::Verdict { measure: measure.into(), axiom, status: Status::Violated });
        self
    }

    fn values(mut self, measure: &str, stage: Stage, pairs: &[(&str, Expected)]) -> Self {
        for (node, expected) in pairs {
            self.expected.push(Expectation::Value {
                measure: measure.into(),
                stage,
                node: (*node).into(),
                expected: expected.clone(),
            });
        }
        self
    }

    fn exact(self, measure: &str, stage: Stage, pairs: &[(&str, &str)]) -> Self {
        let pairs: Vec<_> = pairs.iter().map(|(n, v)| (*n, Expected::exact(v))).collect();
        self.values(measure, stage, &pairs)
    }

    fn printed(self, measure: &str, stage: Stage, pairs: &[(&str, f64)]) -> Self {
        let pairs: Vec<_> = pairs.iter().map(|(n, v)| (*n, Expected::approx(*v, PRINTED_TOLERANCE))).collect();
        self.values(measure, stage, &pairs)
    }

    fn delta(mut self, measure: &str, node: &str, expected: Expected) -> Self {
        self.expected.push(Expectation::Delta { measure: measure.into(), node: node.into(), expected });
        self
    }

    fn local(mut self, measure: &str, node: &str, expected: Expected) -> Self {
        self.expected.push(Expectation::Local { measure: measure.into(), node: node.into(), expected });
        self
    }

    fn order(mut self, measure: &str, left: &str, relation: Relation, right: &str) -> Self {
        self.expected.push(Expectation::Order {
            measure: measure.into(),
            stage: Stage::Before,
            left: left.into(),
            right: right.into(),
            relation,
        });
        self
    }

    fn profile(mut self, node: &str, sums: &[u64]) -> Self {
        self.expected.push(Expectation::Profile { node: node.into(), sums: sums.to_vec() });
        self
    }

    fn eigenvalue(mut self, stage: Stage, expected: Expected) -> Self {
        self.expected.push(Expectation::Eigenvalue { stage, expected });
        self
    }

    fn build(self) -> Fixture {
        let index = |l: &str| self.labels.iter().position(|x| *x == l).unwrap_or_else(|| panic!("label {l}"));
        let graph = Graph::new(self.labels.len(), self.edges.iter().map(|&(a, b)| (index(a), index(b))))
            .expect("fixture graphs are simple");
        let added_edge = self.added.map(|(a, b)| (index(a), index(b)));
        Fixture {
            id: self.id,
            description: self.description,
            graph,
            added_edge,
            labels: self.labels.iter().enumerate().map(|(i, l)| (l.to_string(), i)).collect(),
            expected: self.expected,
        }
    }
}

use Stage::{After, Before};

fn catalog() -> Vec<Fixture> {
    let half_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        Builder::new("star-five", "five-node star with centre 3", &["1", "2", "3", "4", "5"])
            .edges(&[("3", "1"), ("3", "2"), ("3", "4"), ("3", "5")])
            .exact("DC", Before, &[("1", "1"), ("2", "1"), ("3", "4"), ("4", "1"), ("5", "1")])
            .exact("CC", Before, &[("1", "5/2"), ("2", "5/2"), ("3", "4"), ("4", "5/2"), ("5", "5/2")])
            .exact("BC", Before, &[("1", "0"), ("2", "0"), ("3", "6"), ("4", "0"), ("5", "0")])
            .values(
                "EC",
                Before,
                &[
                    ("1", Expected::approx(half_sqrt2 / 2.0, CLOSED_FORM_TOLERANCE)),
                    ("2", Expected::approx(half_sqrt2 / 2.0, CLOSED_FORM_TOLERANCE)),
                    ("3", Expected::approx(half_sqrt2, CLOSED_FORM_TOLERANCE)),
                    ("4", Expected::approx(half_sqrt2 / 2.0, CLOSED_FORM_TOLERANCE)),
                    ("5", Expected::approx(half_sqrt2 / 2.0, CLOSED_FORM_TOLERANCE)),
                ],
            )
            .eigenvalue(Before, Expected::approx(2.0, EIGENVALUE_TOLERANCE))
            .build(),
        Builder::new(
            "dc-structural",
            "u with two degree-2 neighbours against v with two leaves",
            &["u", "u1", "u2", "u11", "u21", "v", "v1", "v2"],
        )
        .edges(&[("u", "u1"), ("u", "u2"), ("u1", "u11"), ("u2", "u21"), ("v", "v1"), ("v", "v2")])
        .exact("DC", Before, &[("u", "2"), ("v", "2"), ("u1", "2"), ("u2", "2"), ("v1", "1"), ("v2", "1")])
        .violates("DC", AxiomId::StructuralConsistency)
        .build(),
        Builder::new(
            "cc-diminishing",
            "seven-node path closed into a cycle by the edge {u, v}",
            &["z2", "y", "u", "z1", "w", "x", "v"],
        )
        .edges(&[("z2", "y"), ("y", "u"), ("u", "z1"), ("z1", "w"), ("w", "x"), ("x", "v")])
        .add("u", "v")
        .delta("CC", "z1", Expected::exact("1/6"))
        .delta("CC", "z2", Expected::exact("13/60"))
        .exact("BC", Before, &[("w", "8"), ("y", "5")])
        .exact("BC", After, &[("w", "1"), ("y", "5")])
        .delta("BC", "w", Expected::exact("7"))
        .delta("BC", "y", Expected::exact("0"))
        .violates("CC", AxiomId::DiminishingImpact)
        .violates("BC", AxiomId::DiminishingImpact)
        .build(),
        Builder::new(
            "cc-structural",
            "triangle against a two-leaf star",
            &["u", "u1", "u2", "v", "v1", "v2"],
        )
        .edges(&[("u", "u1"), ("u", "u2"), ("u1", "u2"), ("v", "v1"), ("v", "v2")])
        .exact("CC", Before, &[("u", "2"), ("u1", "2"), ("u2", "2"), ("v", "2"), ("v1", "3/2"), ("v2", "3/2")])
        .violates("CC", AxiomId::StructuralConsistency)
        .build(),
        Builder::new("bc-monotonicity", "star with centre w, joining leaves u and v", &["u", "v", "w", "x"])
            .edges(&[("w", "u"), ("w", "v"), ("w", "x")])
            .add("u", "v")
            .exact("BC", Before, &[("u", "0"), ("v", "0")])
            .exact("BC", After, &[("u", "0"), ("v", "0")])
            .violates("BC", AxiomId::EdgeMonotonicity)
            .build(),
        Builder::new(
            "bc-structural",
            "triangle with two tails against a two-leaf star",
            &["u", "u1", "u2", "u11", "u21", "v", "v1", "v2"],
        )
        .edges(&[("u", "u1"), ("u", "u2"), ("u1", "u11"), ("u2", "u21"), ("u1", "u2"), ("v", "v1"), ("v", "v2")])
        .exact(
            "BC",
            Before,
            &[("u", "0"), ("u1", "3"), ("u2", "3"), ("u11", "0"), ("u21", "0"), ("v", "1"), ("v1", "0"), ("v2", "0")],
        )
        .violates("BC", AxiomId::StructuralConsistency)
        .build(),
        Builder::new(
            "wdc-diminishing",
            "two paths from u towards a hub x with seven leaves, joined by {u, v}",
            &["u", "v", "z1", "z2", "m1", "m2", "x", "x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        )
        .edges(&[
            ("u", "z1"),
            ("z1", "m2"),
            ("m2", "x"),
            ("v", "x"),
            ("u", "m1"),
            ("m1", "z2"),
            ("x", "x1"),
            ("x", "x2"),
            ("x", "x3"),
            ("x", "x4"),
            ("x", "x5"),
            ("x", "x6"),
            ("x", "x7"),
        ])
        .add("u", "v")
        .delta("WDC", "z1", Expected::exact("5/3"))
        .delta("WDC", "z2", Expected::exact("101/60"))
        .violates("WDC", AxiomId::DiminishingImpact)
        .build(),
        Builder::new(
            "wdc-structural",
            "u over a 4-cycle with a two-leaf tip against v over two cherries",
            &["u", "u1", "u2", "u3", "u4", "u5", "v", "v1", "v2", "v3", "v4", "v5", "v6"],
        )
        .edges(&[
            ("u", "u1"),
            ("u", "u2"),
            ("u1", "u3"),
            ("u2", "u3"),
            ("u3", "u4"),
            ("u3", "u5"),
            ("v", "v1"),
            ("v", "v2"),
            ("v1", "v3"),
            ("v1", "v4"),
            ("v2", "v5"),
            ("v2", "v6"),
        ])
        .exact("WDC", Before, &[("u1", "8"), ("u2", "8"), ("v1", "37/6"), ("v2", "37/6"), ("u", "20/3"), ("v", "8")])
        .order("WDC", "v", Relation::Greater, "u")
        .violates("WDC", AxiomId::StructuralConsistency)
        .build(),
        Builder::new("ec-locality", "two-leaf star beside a single edge", &["u1", "u2", "u5", "u3", "u4"])
            .edges(&[("u1", "u2"), ("u1", "u5"), ("u3", "u4")])
            .printed("EC", Before, &[("u1", 0.7071), ("u2", 0.5), ("u5", 0.5), ("u3", 0.0), ("u4", 0.0)])
            .eigenvalue(Before, Expected::approx(1.4142, PRINTED_TOLERANCE))
            .local("EC", "u1", Expected::approx(0.7071, PRINTED_TOLERANCE))
            .local("EC", "u2", Expected::approx(0.5, PRINTED_TOLERANCE))
            .local("EC", "u3", Expected::approx(0.7071, PRINTED_TOLERANCE))
            .local("EC", "u4", Expected::approx(0.7071, PRINTED_TOLERANCE))
            .violates("EC", AxiomId::Locality)
            .build(),
        Builder::new("ec-monotonicity", "single edge plus an isolated node w", &["u", "v", "w"])
            .edges(&[("u", "v")])
            .add("u", "w")
            .printed("EC", Before, &[("u", 0.7071), ("v", 0.7071), ("w", 0.0)])
            .printed("EC", After, &[("u", 0.7071), ("v", 0.5), ("w", 0.5)])
            .violates("EC", AxiomId::EdgeMonotonicity)
            .build(),
        Builder::new("ec-diminishing", "five nodes closing a triangle u1-u2-u5", &["u1", "u2", "u3", "u4", "u5"])
            .edges(&[("u1", "u2"), ("u1", "u5"), ("u2", "u3"), ("u2", "u4"), ("u4", "u5")])
            .add("u2", "u5")
            .printed("EC", Before, &[("u1", 0.4647), ("u2", 0.5573), ("u3", 0.2610), ("u4", 0.4647), ("u5", 0.4352)])
            .printed("EC", After, &[("u1", 0.4119), ("u2", 0.5825), ("u3", 0.2169), ("u4", 0.4119), ("u5", 0.5237)])
            .delta("EC", "u2", Expected::approx(0.0252, PRINTED_TOLERANCE))
            .delta("EC", "u1", Expected::approx(0.0528, PRINTED_TOLERANCE))
            .violates("EC", AxiomId::DiminishingImpact)
            .build(),
        Builder::new(
            "ddc-structural",
            "u over a 4-cycle tail against v over two cherries",
            &["u", "u1", "u2", "u11", "u22", "v", "v1", "v2", "v11", "v12", "v21", "v22"],
        )
        .edges(&[
            ("u", "u1"),
            ("u", "u2"),
            ("u1", "u11"),
            ("u2", "u22"),
            ("u1", "u2"),
            ("u11", "u22"),
            ("v", "v1"),
            ("v", "v2"),
            ("v1", "v11"),
            ("v1", "v12"),
            ("v2", "v21"),
            ("v2", "v22"),
        ])
        .profile("u", &[2, 6, 4])
        .profile("v", &[2, 6, 4])
        .profile("u1", &[3, 7])
        .profile("u2", &[3, 7])
        .profile("v1", &[3, 4])
        .profile("v2", &[3, 4])
        .order("DDC", "u1", Relation::Greater, "v1")
        .order("DDC", "u2", Relation::Greater, "v2")
        .order("DDC", "u", Relation::Equal, "v")
        .violates("DDC", AxiomId::StructuralConsistency)
        .build(),
    ]
}

/// Ids of every fixture, in catalog order.
pub fn fixture_ids() -> Vec<&'static str> {
    catalog().into_iter().map(|f| f.id).collect()
}

pub fn all_fixtures() -> Vec<Fixture> {
    catalog()
}

pub fn fixture(id: &str) -> Result<Fixture, SearchError> {
    catalog().into_iter().find(|f| f.id == id).ok_or_else(|| SearchError::UnknownFixture(id.into()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationOutcome {
    pub expectation: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReplay {
    pub id: &'static str,
    pub outcomes: Vec<ExpectationOutcome>,
}

impl FixtureReplay {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

/// Re-evaluates every expectation of a fixture against the given measures.
pub fn replay_fixture(f: &Fixture, registry: &[MeasureHandle]) -> Result<FixtureReplay, SearchError> {
    let node = |label: &str| f.node(label).ok_or_else(|| SearchError::InvalidFixture(format!("{}: no node {label}", f.id)));
    let stage_graph = |s: Stage| -> Result<Graph, SearchError> {
        match s {
            Stage::Before => Ok(f.graph.clone()),
            Stage::After => f.modified().ok_or_else(|| SearchError::InvalidFixture(format!("{}: no added edge", f.id))),
        }
    };
    let mut outcomes = Vec::new();
    for e in &f.expected {
        let (observed, passed) = match e {
            Expectation::Verdict { measure, axiom, status } => {
                let m = lookup_measure(registry, measure)?;
                let v = m.check(*axiom, &f.graph, &CheckConfig::default())?;
                let replays = match &v.witness {
                    Some(w) => m.replay(w)?,
                    None => true,
                };
                (format!("{:?}", v.status), v.status == *status && replays)
            }
            Expectation::Value { measure, stage, node: label, expected } => {
                let m = lookup_measure(registry, measure)?;
                let value = m.evaluate(&stage_graph(*stage)?)?.values[node(label)?].clone();
                (value.to_string(), expected.accepts(&value))
            }
            Expectation::Delta { measure, node: label, expected } => {
                let m = lookup_measure(registry, measure)?;
                let z = node(label)?;
                let before = m.evaluate(&f.graph)?.values[z].clone();
                let after = m.evaluate(&stage_graph(Stage::After)?)?.values[z].clone();
                let delta = abs_difference(&after, &before);
                (delta.to_string(), expected.accepts(&delta))
            }
            Expectation::Local { measure, node: label, expected } => {
                let m = lookup_measure(registry, measure)?;
                let z = node(label)?;
                let comp = induced_component(&f.graph, z)?;
                let value = m.evaluate(&comp.graph)?.values[comp.local(z).expect("own component")].clone();
                (value.to_string(), expected.accepts(&value))
            }
            Expectation::Order { measure, stage, left, right, relation } => {
                let m = lookup_measure(registry, measure)?;
                let values = m.evaluate(&stage_graph(*stage)?)?.values;
                let (a, b) = (&values[node(left)?], &values[node(right)?]);
                let seen = Relation::of(compare_scores(a, b));
                (format!("{a} {} {b}", seen.symbol()), seen == *relation)
            }
            Expectation::Profile { node: label, sums } => {
                let p = ddc_profile(&f.graph, node(label)?)?;
                let mut padded = p.sums.clone();
                padded.resize(padded.len().max(sums.len()), 0);
                (format!("{:?}", p.sums), padded[..sums.len()] == sums[..])
            }
            Expectation::Eigenvalue { stage, expected } => {
                let r = eigenvector_centrality_with(&stage_graph(*stage)?, EigenConfig::default())?;
                let value = Score::Float(r.lambda_max);
                (value.to_string(), expected.accepts(&value))
            }
        };
        outcomes.push(ExpectationOutcome { expectation: e.to_string(), observed, passed });
    }
    Ok(FixtureReplay { id: f.id, outcomes })
}

fn abs_difference(a: &Score, b: &Score) -> Score {
    match (a, b) {
        (Score::Exact(x), Score::Exact(y)) => Score::Exact(num_traits::Signed::abs(&(x - y))),
        _ => Score::Float((a.approx_f64() - b.approx_f64()).abs()),
    }
}

fn compare_scores(a: &Score, b: &Score) -> Ordering {
    match (a, b) {
        (Score::Exact(x), Score::Exact(y)) => x.cmp(y),
        _ => {
            let d = a.approx_f64() - b.approx_f64();
            if d.abs() <= crate::scalar::F64_TOLERANCE {
                Ordering::Equal
            } else if d > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}
