//! Command-line driver: compute centralities, check axioms, search for
//! counterexamples and print the satisfiability matrix.

pub mod report;

use std::error::Error;
use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use centrality_core::axioms::{AxiomId, CheckConfig, DiminishingReading};
use centrality_core::graph::parse_graph;
use centrality_core::measures::{lookup_measure, registry_with, EigenConfig, MeasureHandle, RegistryParams};
use centrality_core::scalar::parse_rational;
use centrality_core::search::{
    all_fixtures, build_satisfiability_matrix, export_fixtures, find_counterexample, fixture, replay_fixture,
    SearchBudget, SearchMode,
};
use centrality_core::Exact;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{render_report, Format, GraphSource, Report};

pub const JOBS_ENV: &str = "CENTRALITY_LAB_JOBS";

type Fallible<T> = Result<T, Box<dyn Error + Send + Sync>>;

#[derive(Debug, Parser)]
#[command(name = "centrality-lab", version, about = "Centrality measures, axiom checks and counterexample search")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print exact values as decimals with this many digits.
    #[arg(long = "decimal", global = true, value_name = "K")]
    decimal: Option<usize>,

    /// Decay parameter of uniform centrality, as an integer, fraction or decimal.
    #[arg(long, global = true, default_value = "1")]
    beta: String,

    /// Convergence tolerance of the eigenvector power iteration.
    #[arg(long = "ec-tol", global = true, default_value_t = 1e-12)]
    ec_tol: f64,

    /// Worker threads for scans; CENTRALITY_LAB_JOBS takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Centrality values of every node.
    Compute {
        #[command(flatten)]
        input: GraphArgs,
        /// `all` or a comma-separated list of measure names or abbreviations.
        #[arg(long, default_value = "all")]
        measure: String,
    },
    /// Check axioms on one graph.
    Check {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long, default_value = "all")]
        measure: String,
        /// `all` or a comma-separated list such as `1,4,A6,locality`.
        #[arg(long, default_value = "all")]
        axiom: String,
        #[command(flatten)]
        check: CheckArgs,
        /// Exit with status 1 if any axiom is violated.
        #[arg(long)]
        fail_on_violation: bool,
    },
    /// Look for the first counterexample to one axiom.
    Search {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        axiom: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long)]
        fail_on_violation: bool,
    },
    /// Every measure against every axiom.
    Matrix {
        /// Largest graph order of the scan.
        #[arg(long = "exhaustive-n", default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// The catalog of hand-built example graphs.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Debug, Subcommand)]
enum FixtureAction {
    List,
    /// Print one fixture's graph, labels and expectations.
    Show { id: String },
    /// Write every fixture as an edge list plus a JSON manifest.
    Export { dir: PathBuf },
    /// Recompute every stated value; exits 1 if any differs.
    Replay { id: Option<String> },
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list or JSON file, `-` for stdin, or `fixture:<id>`.
    #[arg(long)]
    graph: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Random relabelings tried by the isomorphism check.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Try all n! relabelings on graphs with at most 7 nodes.
    #[arg(long)]
    exhaustive_permutations: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Reading::Universal)]
    reading: Reading,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Random mode: number of sampled graphs.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0.5)]
    edge_probability: f64,
    /// Exhaustive mode: one graph per isomorphism class.
    #[arg(long)]
    dedup: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Reading {
    Universal,
    Existential,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

impl CheckArgs {
    fn config(&self) -> CheckConfig {
        CheckConfig {
            trials: self.trials,
            exhaustive_permutations: self.exhaustive_permutations,
            seed: self.seed,
            diminishing: match self.reading {
                Reading::Universal => DiminishingReading::Universal,
                Reading::Existential => DiminishingReading::Existential,
            },
        }
    }
}

impl BudgetArgs {
    fn budget(&self, n_max: usize, seed: u64) -> SearchBudget {
        SearchBudget {
            n_max,
            mode: match self.mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Random => SearchMode::Random,
            },
            random_samples: self.samples,
            edge_probability: self.edge_probability,
            seed,
            dedup_isomorphic: self.dedup,
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status: 0 on success, 1 for a violation under `--fail-on-violation` or a
/// failed fixture replay, 2 for usage and input errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let jobs = match jobs(cli.jobs) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return 2;
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(Outcome { text, failed }) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return 2;
            }
            if failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// The environment variable wins over the flag; `None` means one thread per core.
fn jobs(flag: Option<usize>) -> Fallible<Option<usize>> {
    let n = match std::env::var(JOBS_ENV) {
        Ok(v) if !v.trim().is_empty() => Some(
            v.trim().parse::<usize>().map_err(|_| format!("{JOBS_ENV} must be a positive integer, got {v:?}"))?,
        ),
        _ => flag,
    };
    if n == Some(0) {
        return Err("the number of jobs must be at least 1".into());
    }
    Ok(n)
}

fn emit(cli: &Cli, text: &str) -> Fallible<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
        }
    }
    Ok(())
}

struct Outcome {
    text: String,
    failed: bool,
}

fn run(cli: &Cli) -> Fallible<Outcome> {
    let registry = registry(cli)?;
    let render = |r: &Report| render_report(r, cli.format, cli.decimal);
    match &cli.command {
        Command::Compute { input, measure } => {
            let source = load_graph(&input.graph)?;
            let measures = select_measures(&registry, measure)?;
            let vectors = measures.iter().map(|m| m.evaluate(&source.graph)).collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome { text: render(&Report::Centralities { source: &source, vectors: &vectors }), failed: false })
        }
        Command::Check { input, measure, axiom, check, fail_on_violation } => {
            let source = load_graph(&input.graph)?;
            let measures = select_measures(&registry, measure)?;
            let axioms = select_axioms(axiom)?;
            let config = check.config();
            let mut verdicts = Vec::new();
            for m in &measures {
                for &a in &axioms {
                    verdicts.push(m.check(a, &source.graph, &config)?);
                }
            }
            let violated = verdicts.iter().any(|v| v.is_violated());
            let text = render(&Report::Verdicts { source: &source, verdicts: &verdicts });
            Ok(Outcome { text, failed: violated && *fail_on_violation })
        }
        Command::Search { measure, axiom, budget, n_max, check, fail_on_violation } => {
            let m = lookup_measure(&registry, measure)?;
            let axiom: AxiomId = axiom.parse()?;
            let budget = budget.budget(*n_max, check.seed);
            let found = find_counterexample(m, axiom, &budget, &check.config())?;
            let text = render(&Report::Search { measure: &m.name, axiom, budget: &budget, found: found.as_ref() });
            Ok(Outcome { text, failed: found.is_some() && *fail_on_violation })
        }
        Command::Matrix { n_max, budget, check } => {
            let budget = budget.budget(*n_max, check.seed);
            let matrix = build_satisfiability_matrix(&registry, &budget, &check.config())?;
            Ok(Outcome { text: render(&Report::Matrix(&matrix)), failed: false })
        }
        Command::Fixtures { action } => run_fixtures(cli, action, &registry),
    }
}

fn run_fixtures(cli: &Cli, action: &FixtureAction, registry: &[MeasureHandle]) -> Fallible<Outcome> {
    let render = |r: &Report| render_report(r, cli.format, cli.decimal);
    match action {
        FixtureAction::List => {
            Ok(Outcome { text: render(&Report::FixtureList(&all_fixtures())), failed: false })
        }
        FixtureAction::Show { id } => {
            let f = fixture(id)?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&f)? + "\n",
                _ => {
                    let mut text = format!("{}: {}\n", f.id, f.description);
                    let labels: Vec<String> = f.labels.iter().map(|(l, v)| format!("{l}={v}")).collect();
                    text += &format!("labels: {}\n", labels.join(" "));
                    if let Some((u, v)) = f.added_edge {
                        text += &format!("added edge: {{{u}, {v}}}\n");
                    }
                    text += &format!("graph:\n{}", centrality_core::graph::serialize_edge_list(&f.graph));
                    text += "expectations:\n";
                    for e in &f.expected {
                        text += &format!("  {e}\n");
                    }
                    text
                }
            };
            Ok(Outcome { text, failed: false })
        }
        FixtureAction::Export { dir } => {
            let written = export_fixtures(dir)?;
            let text = match cli.format {
                Format::Json => {
                    let files: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
                    serde_json::to_string_pretty(&serde_json::json!({ "written": files }))? + "\n"
                }
                _ => written.iter().map(|p| format!("wrote {}\n", p.display())).collect(),
            };
            Ok(Outcome { text, failed: false })
        }
        FixtureAction::Replay { id } => {
            let fixtures = match id {
                Some(id) => vec![fixture(id)?],
                None => all_fixtures(),
            };
            let replays = fixtures.iter().map(|f| replay_fixture(f, registry)).collect::<Result<Vec<_>, _>>()?;
            let failed = !replays.iter().all(|r| r.passed());
            Ok(Outcome { text: render(&Report::FixtureReplays(&replays)), failed })
        }
    }
}

fn registry(cli: &Cli) -> Fallible<Vec<MeasureHandle>> {
    let beta = parse_number(&cli.beta).ok_or_else(|| format!("invalid --beta {:?}", cli.beta))?;
    let params = RegistryParams { beta, ec: EigenConfig { tol: cli.ec_tol, ..EigenConfig::default() } };
    Ok(registry_with(&params)?)
}

/// Integer, `p/q` or a plain decimal such as `0.25`, read exactly.
fn parse_number(text: &str) -> Option<Exact> {
    let text = text.trim();
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        return parse_rational(&format!("{digits}/1{}", "0".repeat(frac.len())));
    }
    parse_rational(text)
}

fn select_measures<'a>(registry: &'a [MeasureHandle], query: &str) -> Fallible<Vec<&'a MeasureHandle>> {
    if query.trim().eq_ignore_ascii_case("all") {
        return Ok(registry.iter().collect());
    }
    let mut out = Vec::new();
    for part in query.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.push(lookup_measure(registry, part)?);
    }
    if out.is_empty() {
        return Err("no measure selected".into());
    }
    Ok(out)
}

fn select_axioms(query: &str) -> Fallible<Vec<AxiomId>> {
    if query.trim().eq_ignore_ascii_case("all") {
        return Ok(AxiomId::ALL.to_vec());
    }
    let axioms = query.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect::<Result<Vec<AxiomId>, _>>()?;
    if axioms.is_empty() {
        return Err("no axiom selected".into());
    }
    Ok(axioms)
}

fn load_graph(query: &str) -> Fallible<GraphSource> {
    if let Some(id) = query.strip_prefix("fixture:") {
        let f = fixture(id)?;
        let labels = f.graph.nodes().map(|v| f.label(v).map_or_else(|| v.to_string(), str::to_string)).collect();
        return Ok(GraphSource { name: query.to_string(), graph: f.graph, labels: Some(labels) });
    }
    let text = if query == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("cannot read stdin: {e}"))?
    } else {
        fs::read_to_string(query).map_err(|e| format!("cannot read {query}: {e}"))?
    };
    let graph = parse_graph(&text).map_err(|e| format!("{query}: {e}"))?;
    Ok(GraphSource { name: query.to_string(), graph, labels: None })
}
