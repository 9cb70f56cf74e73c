//! `parabola` — exact verification, construction, and search for
//! rational-distance point sets on the half-parabola y = x^2, x > 0.
//!
//! Exit codes: 0 success (for `verify`: every pairwise distance rational),
//! 1 `verify` found an irrational pair, 2 invalid input or parameters.
//! Payloads go to standard output (or `--output`); phase logs and error
//! messages go to standard error. Verdicts are data, never errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use parabola_core::constructions::{
    claim_note, diamond_grid, emit_plot_samples, grid_report, verify_grid, DiamondParams,
    HyperbolaParams, PlotSpec,
};
use parabola_core::expr::parse_element;
use parabola_core::parabola::{lift_point, matrix_report};
use parabola_core::pythagorean::conjecture_difference_search;
use parabola_core::rational::parse_ratio;
use parabola_core::search::{
    build_distance_graph_capped, cliques_report, find_rational_cliques, DEFAULT_VERTEX_CAP,
};
use parabola_core::tower::{FieldTower, DEFAULT_BIT_CAP};

#[derive(Parser)]
#[command(
    name = "parabola",
    version,
    about = "Exact rational-distance tooling on the parabola y = x^2 (x > 0)"
)]
struct Cli {
    /// Decimal digits for numeric enclosures in reports (field names in the
    /// JSON formats are fixed and do not change with this value).
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,

    /// Bit-length cap on exact intermediates when evaluating input
    /// expressions (verify); guards against malicious blowup.
    #[arg(long, global = true, default_value_t = DEFAULT_BIT_CAP)]
    bit_cap: u64,

    /// Write the payload to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every pairwise distance of a point set given as a JSON array
    /// of x-coordinate expressions, e.g. ["137/420", "(0 + 1/4*sqrt(2))"].
    Verify {
        /// Path to the JSON point file.
        points_file: PathBuf,
    },
    /// Build an N x N conjugate-factor grid, verify all cross-pair
    /// distances exactly, and emit the grid report.
    Diamond(DiamondArgs),
    /// Enumerate rational x-coordinates, join pairs at rational distance,
    /// and list all fully-rational N-point subsets.
    Search {
        /// Largest x-coordinate, as p/q.
        #[arg(long, default_value = "1")]
        xmax: String,
        /// Largest denominator enumerated.
        #[arg(long)]
        qmax: u64,
        /// Subset size to search for.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
    },
    /// Exhaustively test the repeated-difference conjecture for Pythagorean
    /// fractions with numerator and denominator up to the bound.
    Conjecture {
        #[arg(long)]
        bound: u64,
    },
    /// Emit CSV sample tables for the hyperbola families or the exact
    /// coordinates of a grid.
    Plot(PlotArgs),
}

#[derive(Args)]
struct DiamondArgs {
    /// Radicand R (must not be a perfect square), as p/q.
    #[arg(long)]
    r: String,
    /// Base of the rational-part progression a = a0 + n*step_a.
    #[arg(long)]
    a0: String,
    /// Base of the coefficient progression b = b0 + m*step_b.
    #[arg(long)]
    b0: String,
    #[arg(long, default_value = "1")]
    step_a: String,
    #[arg(long, default_value = "1")]
    step_b: String,
    /// Grid size N: rows n = 1..=N, columns m = 0..N-1.
    #[arg(long)]
    n: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    Hyperbola31,
    Hyperbola32,
    #[value(alias = "diamond_grid")]
    DiamondGrid,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Hyperbola constant C, as p/q (hyperbola kinds).
    #[arg(long)]
    c: Option<String>,
    /// Radicand R for the shifted family (hyperbola32).
    #[arg(long)]
    rad: Option<String>,
    /// Sample range start for u = x + y.
    #[arg(long, default_value = "1")]
    from: String,
    /// Sample range end.
    #[arg(long, default_value = "5")]
    to: String,
    /// Number of samples (>= 2), endpoints included.
    #[arg(long, default_value_t = 9)]
    count: usize,
    #[command(flatten)]
    grid: PlotGridArgs,
}

/// Grid flags, only consulted for --kind diamond-grid.
#[derive(Args)]
struct PlotGridArgs {
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    a0: Option<String>,
    #[arg(long)]
    b0: Option<String>,
    #[arg(long, default_value = "1")]
    step_a: String,
    #[arg(long, default_value = "1")]
    step_b: String,
    #[arg(long)]
    n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let precision = cli.precision;
    let (payload, code) = match cli.command {
        Command::Verify { points_file } => cmd_verify(&points_file, precision, cli.bit_cap)?,
        Command::Diamond(args) => (cmd_diamond(&args, precision)?, ExitCode::SUCCESS),
        Command::Search { xmax, qmax, n, vertex_cap } => {
            (cmd_search(&xmax, qmax, n, vertex_cap)?, ExitCode::SUCCESS)
        }
        Command::Conjecture { bound } => (cmd_conjecture(bound)?, ExitCode::SUCCESS),
        Command::Plot(args) => (cmd_plot(&args, precision)?, ExitCode::SUCCESS),
    };
    match cli.output {
        Some(path) => {
            fs::write(&path, payload).map_err(|e| format!("writing {}: {e}", path.display()))?;
            eprintln!("phase: wrote {}", path.display());
        }
        None => print!("{payload}"),
    }
    Ok(code)
}

fn rational_flag(name: &str, text: &str) -> Result<BigRational, String> {
    parse_ratio(text).map_err(|e| format!("--{name}: {e}"))
}

fn cmd_verify(path: &PathBuf, precision: u32, bit_cap: u64) -> Result<(String, ExitCode), String> {
    eprintln!("phase: reading {}", path.display());
    let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let exprs: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| format!("{}: expected a JSON array of expression strings: {e}", path.display()))?;
    let mut tower = FieldTower::with_bit_cap(bit_cap);
    let mut points = Vec::new();
    for (idx, expr) in exprs.iter().enumerate() {
        let element = parse_element(expr, &mut tower)
            .map_err(|e| format!("point {idx}: {e}"))?;
        let point = lift_point(&tower, element).map_err(|e| format!("point {idx}: {e}"))?;
        points.push(point);
    }
    eprintln!("phase: classifying {} pairs", points.len() * points.len().saturating_sub(1) / 2);
    let report = matrix_report(&tower, &points, precision).map_err(|e| e.to_string())?;
    let payload = to_json(&report)?;
    let code = if report.all_rational { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((payload, code))
}

fn diamond_params(args: &DiamondArgs) -> Result<DiamondParams, String> {
    DiamondParams::validated(
        rational_flag("r", &args.r)?,
        rational_flag("a0", &args.a0)?,
        rational_flag("b0", &args.b0)?,
        rational_flag("step-a", &args.step_a)?,
        rational_flag("step-b", &args.step_b)?,
        args.n,
    )
    .map_err(|e| e.to_string())
}

fn cmd_diamond(args: &DiamondArgs, precision: u32) -> Result<String, String> {
    let params = diamond_params(args)?;
    eprintln!("phase: constructing {0} x {0} grid", params.n);
    let grid = diamond_grid(&params).map_err(|e| e.to_string())?;
    eprintln!("phase: verifying cross-pair distances");
    let verification = verify_grid(&grid).map_err(|e| e.to_string())?;
    for note in &verification.notes {
        eprintln!("note: {note}");
    }
    to_json(&grid_report(&grid, &verification, precision))
}

fn cmd_search(xmax: &str, qmax: u64, n: usize, vertex_cap: usize) -> Result<String, String> {
    let xmax = rational_flag("xmax", xmax)?;
    eprintln!("phase: building distance graph (qmax = {qmax})");
    let graph = build_distance_graph_capped(&xmax, qmax, vertex_cap).map_err(|e| e.to_string())?;
    eprintln!(
        "phase: graph ready ({} vertices, {} edges); searching {n}-cliques",
        graph.vertices.len(),
        graph.edges.len()
    );
    let sets = find_rational_cliques(&graph, n).map_err(|e| e.to_string())?;
    eprintln!("phase: {} set(s) found and re-verified", sets.len());
    to_json(&cliques_report(&sets))
}

fn cmd_conjecture(bound: u64) -> Result<String, String> {
    eprintln!("phase: difference search up to {bound}");
    let search = conjecture_difference_search(bound).map_err(|e| e.to_string())?;
    to_json(&search.to_report())
}

fn cmd_plot(args: &PlotArgs, precision: u32) -> Result<String, String> {
    let spec = match args.kind {
        PlotKind::Hyperbola31 | PlotKind::Hyperbola32 => {
            let c_text = args.c.as_deref().ok_or("--c is required for hyperbola kinds")?;
            let c = rational_flag("c", c_text)?;
            // the feasibility adjudication rides along on standard error
            if let Ok(params) = HyperbolaParams::new(c.clone()) {
                eprintln!("note: {}", claim_note(&params).map_err(|e| e.to_string())?);
            }
            let from = rational_flag("from", &args.from)?;
            let to = rational_flag("to", &args.to)?;
            let count = args.count;
            if args.kind == PlotKind::Hyperbola31 {
                PlotSpec::Hyperbola31 { c, from, to, count }
            } else {
                let rad_text = args.rad.as_deref().ok_or("--rad is required for hyperbola32")?;
                let rad = rational_flag("rad", rad_text)?;
                PlotSpec::Hyperbola32 { c, rad, from, to, count }
            }
        }
        PlotKind::DiamondGrid => {
            let need = |field: &Option<String>, name: &str| {
                field
                    .as_deref()
                    .ok_or(format!("--{name} is required for diamond-grid"))
                    .map(str::to_owned)
            };
            PlotSpec::DiamondGrid(
                DiamondParams::validated(
                    rational_flag("r", &need(&args.grid.r, "r")?)?,
                    rational_flag("a0", &need(&args.grid.a0, "a0")?)?,
                    rational_flag("b0", &need(&args.grid.b0, "b0")?)?,
                    rational_flag("step-a", &args.grid.step_a)?,
                    rational_flag("step-b", &args.grid.step_b)?,
                    args.grid.n.ok_or("--n is required for diamond-grid")?,
                )
                .map_err(|e| e.to_string())?,
            )
        }
    };
    eprintln!("phase: sampling");
    emit_plot_samples(&spec, precision).map_err(|e| e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| e.to_string())
}
