//! Command-line surface. The binary is a thin wrapper around [`main_with`].
//!
//! Exit codes: 0 when every requested check holds (or a search finished),
//! 1 when a requested paradox or condition fails, 2 for usage and input
//! errors, 3 when a theorem-backed check fails (an internal error).

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centrality::{self, CentralitySpec, Direction, Measure};
use crate::conditions;
use crate::error::{Error, Result};
use crate::explore;
use crate::generators::{self, Family, FamilySpec};
use crate::graph::{Duplicates, Graph, Orientation};
use crate::io::{self, GraphSummary, ParseOptions, Provenance, Report, ReportDocument};
use crate::paradox;
use crate::spectral::{self, SeriesCoefficients, Side};

/// Environment variable naming the directory for relative `--out` paths.
pub const OUT_DIR_ENV: &str = "FPARADOX_OUT_DIR";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FINDING: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fparadox", version, about = "Friendship-paradox checks for walk-based centrality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel trials (0 = one per core). Results do
    /// not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Edge-list file
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Generator family (figure1, hub_cycle, erdos_renyi, ...)
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Node labels in the edge list start at 1
    #[arg(long)]
    pub one_based: bool,
    /// Add the weights of repeated edges instead of rejecting them
    #[arg(long)]
    pub sum_duplicates: bool,
}

impl GraphArgs {
    fn family_spec(&self) -> Result<Option<FamilySpec>> {
        self.family
            .as_deref()
            .map(|name| {
                Family::from_parts(name, self.n, self.k, self.p, self.m)
                    .map(|f| FamilySpec::seeded(f, self.seed))
            })
            .transpose()
    }

    fn load(&self) -> Result<Graph> {
        if let Some(path) = &self.graph {
            let opts = ParseOptions {
                one_based: self.one_based,
                duplicates: if self.sum_duplicates {
                    Duplicates::Sum
                } else {
                    Duplicates::Reject
                },
            };
            return io::read_edge_list(path, opts);
        }
        match self.family_spec()? {
            Some(spec) => generators::make(&spec),
            None => Err(Error::invalid("give --graph PATH or --family NAME")),
        }
    }

    fn require_family(&self) -> Result<FamilySpec> {
        self.family_spec()?
            .ok_or_else(|| Error::invalid("this command needs --family NAME"))
    }
}

#[derive(Args, Debug, Clone)]
pub struct MeasureArgs {
    /// degree, eigenvector, katz, total, odd, even or power_series
    #[arg(long, default_value = "degree")]
    pub measure: String,
    /// Katz parameter (default 0.5/ρ)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = centrality::DEFAULT_BETA)]
    pub beta: f64,
    /// Power-series coefficients c0,c1,...
    #[arg(long, value_delimiter = ',')]
    pub coeffs: Vec<f64>,
    /// undirected, broadcast or receive (default: undirected or broadcast)
    #[arg(long)]
    pub direction: Option<String>,
}

impl MeasureArgs {
    fn measure(&self) -> Result<Measure> {
        Ok(match self.measure.as_str() {
            "degree" => Measure::Degree,
            "eigenvector" => Measure::Eigenvector,
            "katz" => Measure::Katz { alpha: self.alpha },
            "total" | "exp" => Measure::Total { beta: self.beta },
            "odd" | "sinh" => Measure::Odd { beta: self.beta },
            "even" | "cosh" => Measure::Even { beta: self.beta },
            "power_series" => {
                if self.coeffs.is_empty() {
                    return Err(Error::invalid("power_series needs --coeffs c0,c1,..."));
                }
                Measure::PowerSeries {
                    coeffs: SeriesCoefficients::new(self.coeffs.clone())?,
                }
            }
            other => return Err(Error::invalid(format!("unknown measure {other:?}"))),
        })
    }

    fn spec(&self, g: &Graph) -> Result<CentralitySpec> {
        let direction = match &self.direction {
            Some(d) => d.parse()?,
            None if g.is_directed() => Direction::Broadcast,
            None => Direction::Undirected,
        };
        Ok(CentralitySpec::new(self.measure()?, direction))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Edge-list text (generate only)
    Edges,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file; relative paths go under $FPARADOX_OUT_DIR when set
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and report it
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a centrality vector
    Centrality {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare node and neighbour averages of a centrality
    Paradox {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        measure: MeasureArgs,
        /// undirected, out or in (default: undirected or out)
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All four degree comparisons on a digraph
    DirectedParadox {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Walk-count conditions with their slack
    Conditions {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Check the walk inequality for this single (r, s) instead
        #[arg(long, requires = "s")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
        /// If the k = 2 condition fails, build a power series whose paradox fails
        #[arg(long)]
        counterexample: bool,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Katz paradox gap over a grid of α in (0, 1/ρ)
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Look for graphs violating the walk inequality with r + s odd
    Search {
        #[command(flatten)]
        graph: GraphArgs,
        /// Search every connected graph up to this size instead of a family
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Build a counterexample centrality from the first violation
        #[arg(long)]
        counterexample: bool,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the undirected checks on every connected graph up to max-n nodes
    Enumerate {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the theorem-backed checks over random graphs from a family
    Suite {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// A finished command: the document, its rendering and the exit status.
#[derive(Debug)]
pub struct RunOutput {
    pub document: ReportDocument,
    pub rendered: String,
    pub status: u8,
    pub out: Option<PathBuf>,
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::TheoremViolation(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// The command line as recorded in reports: everything but `--threads`,
/// which cannot change results.
fn canonical_command(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
        } else if a == "--threads" {
            skip = true;
        } else if !a.starts_with("--threads=") {
            out.push(a.clone());
        }
    }
    out
}

fn kernel_tolerances() -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("eigen".to_string(), spectral::DEFAULT_EIGEN_TOL),
        ("katz".to_string(), spectral::DEFAULT_KATZ_TOL),
        ("series".to_string(), spectral::DEFAULT_SERIES_TOL),
    ])
}

struct Ctx {
    doc: ReportDocument,
    status: u8,
}

impl Ctx {
    fn tol(&mut self, name: &str, given: Option<f64>, default: f64) -> Result<f64> {
        let t = given.unwrap_or(default);
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("tolerance {t} must be finite and nonnegative")));
        }
        self.doc.provenance.tolerances.insert(name.into(), t);
        Ok(t)
    }

    fn graph(&mut self, args: &GraphArgs) -> Result<Graph> {
        let g = args.load()?;
        if args.graph.is_none() {
            self.doc.provenance.seed = Some(args.seed);
        }
        self.doc.graph_summary = Some(GraphSummary::of(&g));
        Ok(g)
    }

    fn push(&mut self, report: Report, holds: bool) {
        if !holds {
            self.status = EXIT_FINDING;
        }
        self.doc.reports.push(report);
    }
}

fn default_mode(g: &Graph) -> Orientation {
    if g.is_directed() {
        Orientation::Out
    } else {
        Orientation::Undirected
    }
}

fn condition_reports(ctx: &mut Ctx, g: &Graph, max_k: usize, rs: Option<(usize, usize)>) -> Result<()> {
    if let Some((r, s)) = rs {
        let c = conditions::check_lagarias(g, r, s)?;
        let holds = c.holds;
        ctx.push(Report::Condition(c), holds);
        return Ok(());
    }
    if max_k == 0 {
        return Err(Error::invalid("--max-k must be at least 1"));
    }
    if g.is_directed() {
        for k in 1..=max_k {
            let c = conditions::check_suff1_directed(g, k)?;
            let holds = c.holds;
            ctx.push(Report::Condition(c), holds);
        }
        if g.is_strongly_connected() {
            for side in [Side::Left, Side::Right] {
                let c = conditions::check_spectral_directed(g, side)?;
                let holds = c.holds;
                ctx.push(Report::Condition(c), holds);
            }
        }
        ctx.push(
            Report::Quantity {
                name: "first_order_in_degree_term".into(),
                value: conditions::first_order_in_degree_term(g)?,
            },
            true,
        );
    } else {
        for k in 1..=max_k {
            let c = conditions::check_suff1a(g, k)?;
            let holds = c.holds;
            ctx.push(Report::Condition(c), holds);
        }
        for order in 2..=max_k + 1 {
            for r in 1..=order / 2 {
                let c = conditions::check_lagarias(g, r, order - r)?;
                let holds = c.holds;
                ctx.push(Report::Condition(c), holds);
            }
        }
    }
    Ok(())
}

fn execute(command: &Command, ctx: &mut Ctx) -> Result<()> {
    match command {
        Command::Generate { graph, .. } => {
            let g = ctx.graph(graph)?;
            ctx.push(
                Report::Graph {
                    n: g.n(),
                    directed: g.is_directed(),
                    edges: g.edges(),
                },
                true,
            );
        }
        Command::Centrality { graph, measure, tol, .. } => {
            let g = ctx.graph(graph)?;
            let mut spec = measure.spec(&g)?;
            if let Some(t) = tol {
                spec = spec.with_tol(ctx.tol("kernel", Some(*t), 0.0)?);
            }
            let x = centrality::compute(&g, &spec)?;
            ctx.push(
                Report::Centrality {
                    measure: spec.measure,
                    label: x.label,
                    values: x.values,
                },
                true,
            );
        }
        Command::Paradox { graph, measure, mode, tol, .. } => {
            let g = ctx.graph(graph)?;
            let tol = ctx.tol("paradox", *tol, paradox::DEFAULT_TOL)?;
            let mode = match mode {
                Some(m) => m.parse()?,
                None => default_mode(&g),
            };
            let x = centrality::compute(&g, &measure.spec(&g)?)?;
            let r = paradox::paradox_report(&g, &x, mode, tol)?;
            let holds = r.holds;
            ctx.push(Report::Paradox(r), holds);
        }
        Command::DirectedParadox { graph, tol, .. } => {
            let g = ctx.graph(graph)?;
            let tol = ctx.tol("paradox", *tol, paradox::DEFAULT_TOL)?;
            let r = paradox::directed_degree_report(&g, tol)?;
            let holds = r.all_hold();
            ctx.push(Report::DirectedParadox(r), holds);
        }
        Command::Conditions {
            graph,
            max_k,
            r,
            s,
            counterexample,
            epsilon,
            ..
        } => {
            let g = ctx.graph(graph)?;
            ctx.tol("condition_rtol", None, conditions::FLOAT_RTOL)?;
            condition_reports(ctx, &g, *max_k, r.zip(*s))?;
            if *counterexample {
                let c = explore::build_power_series_counterexample(&g, *epsilon)?;
                ctx.push(Report::Counterexample(c), true);
            }
        }
        Command::Sweep { graph, grid, tol, .. } => {
            let g = ctx.graph(graph)?;
            let tol = ctx.tol("paradox", *tol, paradox::DEFAULT_TOL)?;
            let s = explore::katz_alpha_sweep(&g, *grid, tol)?;
            let holds = s.violations.is_empty();
            ctx.push(Report::Sweep(s), holds);
        }
        Command::Search {
            graph,
            max_n,
            r,
            s,
            trials,
            counterexample,
            epsilon,
            ..
        } => {
            let outcome = match max_n {
                Some(max_n) => explore::search_lagarias_exhaustive(*max_n, *r, *s)?,
                None => {
                    let spec = graph.require_family()?;
                    ctx.doc.provenance.seed = Some(spec.seed);
                    explore::search_lagarias_violation(&spec, *r, *s, *trials)?
                }
            };
            let first = outcome.violations.first().map(|v| v.graph()).transpose()?;
            ctx.push(Report::Search(outcome), true);
            if *counterexample {
                if let Some(g) = first {
                    let c = explore::build_power_series_counterexample(&g, *epsilon)?;
                    ctx.push(Report::Counterexample(c), true);
                }
            }
        }
        Command::Enumerate { max_n, tol, .. } => {
            let tol = ctx.tol("paradox", *tol, paradox::DEFAULT_TOL)?;
            let summary = explore::exhaustive_theorem_suite(*max_n, tol)?;
            ctx.push(Report::Suite(summary), true);
        }
        Command::Suite { graph, trials, tol, .. } => {
            let spec = graph.require_family()?;
            ctx.doc.provenance.seed = Some(spec.seed);
            let tol = ctx.tol("paradox", *tol, paradox::DEFAULT_TOL)?;
            let summary = explore::random_theorem_suite(&spec, *trials, tol)?;
            ctx.push(Report::Suite(summary), true);
        }
    }
    Ok(())
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Generate { output, .. }
        | Command::Centrality { output, .. }
        | Command::Paradox { output, .. }
        | Command::DirectedParadox { output, .. }
        | Command::Conditions { output, .. }
        | Command::Sweep { output, .. }
        | Command::Search { output, .. }
        | Command::Enumerate { output, .. }
        | Command::Suite { output, .. } => output,
    }
}

fn render(doc: &ReportDocument, format: Format) -> Result<String> {
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => match doc.reports.first() {
            Some(Report::Sweep(s)) => Ok(io::sweep_csv(s)),
            Some(Report::Search(s)) => Ok(io::search_csv(s)),
            _ => Err(Error::invalid("CSV output is available for sweep and search only")),
        },
        Format::Edges => match doc.reports.first() {
            Some(Report::Graph { n, directed, edges }) => {
                Ok(io::write_edge_list(&Graph::build(*n, edges, *directed)?))
            }
            _ => Err(Error::invalid("edge-list output is available for generate only")),
        },
    }
}

/// Run a parsed command. `args` is the raw argument vector, recorded (minus
/// `--threads`) in the report's provenance.
pub fn run(cli: &Cli, args: &[String]) -> Result<RunOutput> {
    let provenance = Provenance {
        command: canonical_command(args),
        seed: None,
        tolerances: kernel_tolerances(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut ctx = Ctx {
        doc: ReportDocument::new(provenance),
        status: EXIT_OK,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| execute(&cli.command, &mut ctx))?;
    let output = output_args(&cli.command);
    let rendered = render(&ctx.doc, output.format)?;
    Ok(RunOutput {
        document: ctx.doc,
        rendered,
        status: ctx.status,
        out: output.out.as_deref().map(resolve_out),
    })
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(out: &RunOutput) -> std::io::Result<()> {
    match &out.out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, &out.rendered)
        }
        None => std::io::stdout().lock().write_all(out.rendered.as_bytes()),
    }
}

/// Parse `args`, run, write the output and return the exit code.
pub fn main_with(args: Vec<String>) -> u8 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli, &args) {
        Ok(out) => {
            if let Err(e) = write_output(&out) {
                eprintln!("fparadox: cannot write output: {e}");
                return EXIT_USAGE;
            }
            out.status
        }
        Err(e) => {
            eprintln!("fparadox: {e}");
            exit_code(&e)
        }
    }
}
