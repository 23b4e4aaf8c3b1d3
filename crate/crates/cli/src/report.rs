//! Plain-text, markdown and JSON rendering of every result the CLI prints.

use std::fmt::Write;

use centrality_core::axioms::{AxiomId, AxiomVerdict, Status, Witness};
use centrality_core::graph::{Graph, Node};
use centrality_core::measures::CentralityVector;
use centrality_core::scalar::Score;
use centrality_core::search::{Fixture, FixtureReplay, FoundWitness, SatisfiabilityMatrix, SearchBudget};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Markdown,
    Json,
}

/// Where a graph came from and how its nodes are called.
#[derive(Debug, Clone)]
pub struct GraphSource {
    pub name: String,
    pub graph: Graph,
    pub labels: Option<Vec<String>>,
}

impl GraphSource {
    fn label(&self, v: Node) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(v)).map(String::as_str)
    }

    fn node_name(&self, v: Node) -> String {
        match self.label(v) {
            Some(l) => format!("{v} ({l})"),
            None => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        json!({ "name": self.name, "graph": self.graph, "labels": self.labels })
    }
}

pub enum Report<'a> {
    Centralities { source: &'a GraphSource, vectors: &'a [CentralityVector<Score>] },
    Verdicts { source: &'a GraphSource, verdicts: &'a [AxiomVerdict] },
    Search { measure: &'a str, axiom: AxiomId, budget: &'a SearchBudget, found: Option<&'a FoundWitness> },
    Matrix(&'a SatisfiabilityMatrix),
    FixtureList(&'a [Fixture]),
    FixtureReplays(&'a [FixtureReplay]),
}

/// Renders a report. `decimals` switches exact values to fixed-point decimals
/// in plain and markdown output; JSON always keeps exact fractions.
pub fn render_report(report: &Report, format: Format, decimals: Option<usize>) -> String {
    if format == Format::Json {
        let value = to_json(report);
        return serde_json::to_string_pretty(&value).expect("report values are plain JSON") + "\n";
    }
    let md = format == Format::Markdown;
    match report {
        Report::Centralities { source, vectors } => centrality_text(source, vectors, md, decimals),
        Report::Verdicts { source, verdicts } => verdicts_text(source, verdicts, md, decimals),
        Report::Search { measure, axiom, budget, found } => search_text(measure, *axiom, budget, *found, md, decimals),
        Report::Matrix(m) => matrix_text(m, md),
        Report::FixtureList(fs) => fixture_list_text(fs, md),
        Report::FixtureReplays(rs) => replay_text(rs, md),
    }
}

fn to_json(report: &Report) -> Value {
    match report {
        Report::Centralities { source, vectors } => json!({
            "source": source.json(),
            "centralities": vectors.iter().map(|v| json!({
                "measure": v.measure,
                "kind": v.kind,
                "values": v.values,
            })).collect::<Vec<_>>(),
        }),
        Report::Verdicts { source, verdicts } => json!({
            "source": source.json(),
            "verdicts": verdicts,
        }),
        Report::Search { measure, axiom, budget, found } => json!({
            "measure": measure,
            "axiom": axiom,
            "budget": budget,
            "scope": budget.scope(),
            "status": if found.is_some() { Status::Violated } else { Status::Satisfied },
            "found": found,
        }),
        Report::Matrix(m) => {
            let (agree, compared) = m.agreement();
            let mut v = serde_json::to_value(m).expect("matrix serializes");
            v["agreement"] = json!({ "agreeing": agree, "compared": compared });
            v
        }
        Report::FixtureList(fs) => json!({
            "fixtures": fs.iter().map(|f| json!({
                "id": f.id,
                "description": f.description,
                "n": f.graph.n(),
                "edges": f.graph.edge_count(),
                "added_edge": f.added_edge.map(|(u, v)| [u, v]),
                "labels": f.labels.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>(),
                "expectations": f.expected.len(),
            })).collect::<Vec<_>>(),
        }),
        Report::FixtureReplays(rs) => json!({
            "passed": rs.iter().all(|r| r.passed()),
            "fixtures": rs,
        }),
    }
}

fn value(s: &Score, decimals: Option<usize>) -> String {
    s.render(decimals)
}

/// Column-aligned table; markdown pipes when `md`.
fn table(header: &[String], rows: &[Vec<String>], md: bool) -> String {
    let mut out = String::new();
    if md {
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}|", header.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
        for r in rows {
            let _ = writeln!(out, "| {} |", r.join(" | "));
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header));
    for r in rows {
        let _ = writeln!(out, "{}", line(r));
    }
    out
}

fn graph_line(source: &GraphSource) -> String {
    format!("graph {} (n = {}, m = {})", source.name, source.graph.n(), source.graph.edge_count())
}

fn centrality_text(source: &GraphSource, vectors: &[CentralityVector<Score>], md: bool, decimals: Option<usize>) -> String {
    let mut header = vec!["node".to_string()];
    header.extend(vectors.iter().map(|v| v.measure.clone()));
    let rows: Vec<Vec<String>> = source
        .graph
        .nodes()
        .map(|u| {
            let mut row = vec![source.node_name(u)];
            row.extend(vectors.iter().map(|v| value(&v.values[u], decimals)));
            row
        })
        .collect();
    let title = if md { format!("## Centralities of {}\n\n", source.name) } else { format!("{}\n\n", graph_line(source)) };
    title + &table(&header, &rows, md)
}

fn witness_text(w: &Witness, md: bool, decimals: Option<usize>) -> String {
    let mut out = String::new();
    let bullet = if md { "- " } else { "  " };
    let _ = writeln!(out, "{bullet}witness: {}", w.description);
    let edges: Vec<String> = w.graph.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(out, "{bullet}graph: n = {}, edges [{}]", w.graph.n(), edges.join(" "));
    if let Some((u, v)) = w.added_edge {
        let _ = writeln!(out, "{bullet}added edge: {{{u}, {v}}}");
    }
    if let Some(p) = &w.permutation {
        let _ = writeln!(out, "{bullet}permutation: {:?}", p.forward());
    }
    if let Some((h, hbar)) = w.hops {
        let _ = writeln!(out, "{bullet}hops: h = {h}, h_bar = {hbar}");
    }
    let roles: Vec<String> = w.nodes.iter().map(|(r, v)| format!("{r}={v}")).collect();
    let _ = writeln!(out, "{bullet}nodes: {}", roles.join(" "));
    let values: Vec<String> = w.values.iter().map(|(l, s)| format!("{l} = {}", value(s, decimals))).collect();
    let _ = writeln!(out, "{bullet}values: {}", values.join(", "));
    out
}

fn verdict_line(v: &AxiomVerdict) -> String {
    let mut flags = Vec::new();
    if v.vacuous {
        flags.push("vacuous");
    }
    if v.numeric {
        flags.push("numeric");
    }
    let flags = if flags.is_empty() { String::new() } else { format!(" ({})", flags.join(", ")) };
    let status = match v.status {
        Status::Satisfied => "satisfied",
        Status::Violated => "violated",
    };
    format!("{} {} for {}: {status}{flags}", v.status.mark(), v.axiom, v.measure)
}

fn verdicts_text(source: &GraphSource, verdicts: &[AxiomVerdict], md: bool, decimals: Option<usize>) -> String {
    let mut out = if md { format!("## Axiom checks on {}\n\n", source.name) } else { format!("{}\n\n", graph_line(source)) };
    for v in verdicts {
        if md {
            let _ = writeln!(out, "### {}\n", verdict_line(v));
        } else {
            let _ = writeln!(out, "{}", verdict_line(v));
        }
        if let Some(w) = &v.witness {
            out.push_str(&witness_text(w, md, decimals));
        }
        if md {
            out.push('\n');
        }
    }
    out
}

fn search_text(
    measure: &str,
    axiom: AxiomId,
    budget: &SearchBudget,
    found: Option<&FoundWitness>,
    md: bool,
    decimals: Option<usize>,
) -> String {
    let mut out = String::new();
    let head = format!("{axiom} for {measure}, searched {}", budget.scope());
    if md {
        let _ = writeln!(out, "## {head}\n");
    } else {
        let _ = writeln!(out, "{head}");
    }
    match found {
        Some(f) => {
            let _ = writeln!(out, "✗ violated: counterexample at n = {}, graph #{}", f.n, f.index);
            out.push_str(&witness_text(&f.witness, md, decimals));
        }
        None => {
            let _ = writeln!(out, "✓ no counterexample within the budget");
        }
    }
    out
}

/// Row titles in the order of the reference table.
fn measure_title(abbreviation: &str, name: &str) -> String {
    match abbreviation {
        "UC" => "Uniform Centrality".into(),
        "DC" => "Degree Centrality".into(),
        "CC" => "Closeness Centrality".into(),
        "BC" => "Betweenness Centrality".into(),
        "WDC" => "Weighted Degree Centrality".into(),
        "EC" => "Eigenvector Centrality".into(),
        "DDC" => "Decaying Degree Centrality".into(),
        _ => name.into(),
    }
}

fn matrix_text(m: &SatisfiabilityMatrix, md: bool) -> String {
    let mut header = vec!["Centrality measure".to_string()];
    header.extend(AxiomId::ALL.iter().map(|a| format!("Axiom {}", a.number())));
    let mut notes: Vec<String> = Vec::new();
    let rows: Vec<Vec<String>> = m
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![measure_title(&r.abbreviation, &r.measure)];
            for c in &r.cells {
                let mut cell = c.status.mark().to_string();
                if let Some(note) = &c.note {
                    notes.push(format!("{} / Axiom {}: {note}", r.abbreviation, c.axiom.number()));
                    cell.push_str(&if md { format!("[^{}]", notes.len()) } else { format!("[{}]", notes.len()) });
                }
                row.push(cell);
            }
            row
        })
        .collect();
    let mut out = String::new();
    if md {
        out.push_str("## Axioms satisfied by each centrality measure\n\n");
    }
    out.push_str(&table(&header, &rows, md));
    let (agree, compared) = m.agreement();
    let _ = writeln!(out, "\nscope: {} plus the fixture catalog", m.scope);
    let _ = writeln!(out, "agreement with reference verdicts: {agree} of {compared} cells");
    if !notes.is_empty() {
        out.push('\n');
        for (i, n) in notes.iter().enumerate() {
            if md {
                let _ = writeln!(out, "[^{}]: {n}", i + 1);
            } else {
                let _ = writeln!(out, "[{}] {n}", i + 1);
            }
        }
    }
    out.push_str(if md { "\n### Evidence\n\n" } else { "\nevidence:\n" });
    for (r, c) in m.cells() {
        let mut line = format!("{} / Axiom {}: {} {}", r.abbreviation, c.axiom.number(), c.status.mark(), c.evidence.summary());
        if c.vacuous {
            line.push_str(" (vacuous on every graph)");
        } else if c.vacuous_graphs > 0 {
            let _ = write!(line, " ({} vacuous graphs)", c.vacuous_graphs);
        }
        let _ = writeln!(out, "{}{line}", if md { "- " } else { "  " });
    }
    out
}

fn fixture_list_text(fs: &[Fixture], md: bool) -> String {
    let header: Vec<String> = ["id", "n", "m", "added edge", "counterexample for", "description"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = fs
        .iter()
        .map(|f| {
            let violations: Vec<String> = f.violations().map(|(m, a)| format!("{m}/A{}", a.number())).collect();
            vec![
                f.id.to_string(),
                f.graph.n().to_string(),
                f.graph.edge_count().to_string(),
                f.added_edge.map(|(u, v)| format!("{{{u}, {v}}}")).unwrap_or_else(|| "-".into()),
                if violations.is_empty() { "-".into() } else { violations.join(" ") },
                f.description.to_string(),
            ]
        })
        .collect();
    table(&header, &rows, md)
}

fn replay_text(rs: &[FixtureReplay], md: bool) -> String {
    let mut out = String::new();
    for r in rs {
        let mark = if r.passed() { "✓" } else { "✗" };
        if md {
            let _ = writeln!(out, "### {mark} {}\n", r.id);
        } else {
            let _ = writeln!(out, "{mark} {}", r.id);
        }
        for o in &r.outcomes {
            let m = if o.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{}{m} {} (observed {})", if md { "- " } else { "  " }, o.expectation, o.observed);
        }
        if md {
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use centrality_core::axioms::CheckConfig;
    use centrality_core::measures::measure_registry;
    use centrality_core::search::fixture;

    fn star() -> GraphSource {
        let f = fixture("star-five").unwrap();
        GraphSource { name: "fixture:star-five".into(), graph: f.graph, labels: Some(f.labels.into_iter().map(|l| l.0).collect()) }
    }

    #[test]
    fn exact_values_render_as_fractions() {
        let s = star();
        let vectors: Vec<_> = measure_registry().iter().map(|m| m.evaluate(&s.graph).unwrap()).collect();
        let text = render_report(&Report::Centralities { source: &s, vectors: &vectors }, Format::Plain, None);
        assert!(text.contains("5/2"));
        assert!(text.contains("2 (3)"));
        let dec = render_report(&Report::Centralities { source: &s, vectors: &vectors }, Format::Plain, Some(3));
        assert!(dec.contains("2.500") && !dec.contains("5/2"));
        let md = render_report(&Report::Centralities { source: &s, vectors: &vectors }, Format::Markdown, None);
        assert!(md.contains("| node | uniform | degree |"));
    }

    #[test]
    fn verdict_has_summary_and_witness_block() {
        let f = fixture("bc-monotonicity").unwrap();
        let reg = measure_registry();
        let v = reg[3].check(AxiomId::EdgeMonotonicity, &f.graph, &CheckConfig::default()).unwrap();
        let s = GraphSource { name: "x".into(), graph: f.graph, labels: None };
        let text = render_report(&Report::Verdicts { source: &s, verdicts: &[v] }, Format::Plain, None);
        assert!(text.contains("✗ Axiom 4 (Edge Monotonicity) for betweenness: violated"));
        assert!(text.contains("witness:") && text.contains("added edge: {0, 1}"));
    }

    #[test]
    fn plain_tables_align() {
        let t = table(&["a".into(), "bbb".into()], &[vec!["xx".into(), "y".into()]], false);
        assert_eq!(t, "a   bbb\nxx  y\n");
    }
}
