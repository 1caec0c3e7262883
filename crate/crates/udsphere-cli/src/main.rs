//! Command-line driver: generate configurations, count exactly, fit growth
//! exponents, verify the 3-regular linear programs, and print the bound
//! table.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure,
//! 3 budget refusal.

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use udsphere::error::FitError;
use udsphere::io;
use udsphere::{
    bipartite_r3_construction, bound_table, build_sphere_graph, count_antipodal_free_paths,
    count_cycles, count_pattern_paths, count_paths, cycle_construction, default_heights,
    enhanced_path_construction, fit_exponent, grid_incidence_scene, lp,
    path_construction, quadratic_c4_config, rich_q_set, run_scaling, ConstructionKind,
    CountKind, Engine, RegularGraphSpec, UnitDistanceGraph, DEFAULT_BUDGET,
};

const EXIT_USAGE: i32 = 1;
const EXIT_VERIFICATION: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "udsphere",
    about = "Exact unit-distance counting workbench on the radius-1/\u{221a}2 sphere",
    version
)]
struct Cli {
    /// Worker threads (default: UDSPHERE_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a configuration and write it as JSON.
    Construct(ConstructArgs),
    /// Count paths/cycles on a stored configuration or edge list.
    Count(CountArgs),
    /// Run a scaling series, fit the log-log slope, and emit CSV + JSON.
    Fit(FitArgs),
    /// Exhaustively verify the exponent-allocation programs of a 3-regular
    /// graph.
    LpVerify(LpVerifyArgs),
    /// Print the reference exponent-bound table.
    Bounds,
}

#[derive(Args)]
struct ConstructArgs {
    /// sphere-path | sphere-enhanced | sphere-cycle | quadratic-c4 | grid |
    /// rich | r3-bipartite
    #[arg(long)]
    kind: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Grid side for --kind grid.
    #[arg(long = "N")]
    grid_n: Option<usize>,
    /// Point budget for --kind rich.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated rational heights for r3-bipartite (default 0,1,…).
    #[arg(long)]
    heights: Option<String>,
    /// Circle radius for r3-bipartite.
    #[arg(long, default_value = "1")]
    radius: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    /// A configuration JSON or an edge-list text file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// paths | cycles | antipodal-free | pattern | all
    #[arg(long, default_value = "all")]
    what: String,
    /// naive | optimized | both (both must agree or the run fails).
    #[arg(long, default_value = "optimized")]
    engine: String,
    /// Refuse configurations whose designated-count estimate exceeds this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// sphere-path | sphere-enhanced | sphere-cycle | quadratic-c4 | grid |
    /// r3-bipartite
    #[arg(long)]
    kind: String,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated size grid (construction-specific size parameter).
    #[arg(long)]
    grid: String,
    /// paths | cycles | antipodal-free | pattern
    #[arg(long, default_value = "paths")]
    what: String,
    #[arg(long, default_value = "optimized")]
    engine: String,
    /// Predicted-count ceiling per grid point.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LpVerifyArgs {
    /// Edge-list file for the pattern graph.
    #[arg(long, conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    /// k4 | k33 | prism | cube
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn verification(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: msg.into(),
        }
    }

    fn budget(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BUDGET,
            message: msg.into(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("UDSPHERE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    if let Err(f) = run(cli.command) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct(args) => cmd_construct(args),
        Command::Count(args) => cmd_count(args),
        Command::Fit(args) => cmd_fit(args),
        Command::LpVerify(args) => cmd_lp_verify(args),
        Command::Bounds => cmd_bounds(),
    }
}

/// Prints without panicking when the pipe closes early.
fn print_line(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print_line(text);
            Ok(())
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("missing required flag {flag}")))
}

fn cmd_construct(args: ConstructArgs) -> Result<(), Failure> {
    let usage = |e: &dyn std::fmt::Display| Failure::usage(e.to_string());
    let value = match args.kind.as_str() {
        "sphere-path" => {
            let k = need(args.k, "--k")?;
            let n = need(args.n, "--n")?;
            let cfg = path_construction(k, n).map_err(|e| usage(&e))?;
            io::sphere_config_to_json(&cfg)
        }
        "sphere-enhanced" => {
            let k = need(args.k, "--k")?;
            let n = need(args.n, "--n")?;
            let cfg = enhanced_path_construction(k, n).map_err(|e| usage(&e))?;
            io::sphere_config_to_json(&cfg)
        }
        "sphere-cycle" => {
            let k = need(args.k, "--k")?;
            let n = need(args.n, "--n")?;
            let cfg = cycle_construction(k, n).map_err(|e| usage(&e))?;
            io::sphere_config_to_json(&cfg)
        }
        "quadratic-c4" => {
            let n = need(args.n, "--n")?;
            let cfg = quadratic_c4_config(n).map_err(|e| usage(&e))?;
            io::sphere_config_to_json(&cfg)
        }
        "grid" => {
            let n = need(args.grid_n, "--N")?;
            let scene = grid_incidence_scene(n).map_err(|e| usage(&e))?;
            io::planar_scene_to_json(&scene)
        }
        "rich" => {
            let m = need(args.m, "--m")?;
            let rich = rich_q_set(m).map_err(|e| usage(&e))?;
            io::sphere_config_to_json(&rich.into_config())
        }
        "r3-bipartite" => {
            let k = need(args.k, "--k")?;
            let n = need(args.n, "--n")?;
            let heights = match &args.heights {
                Some(spec) => spec
                    .split(',')
                    .map(|s| io::rational_from_str(s.trim()))
                    .collect::<Result<Vec<BigRational>, _>>()
                    .map_err(|e| usage(&e))?,
                None => default_heights(k),
            };
            let radius = io::rational_from_str(&args.radius).map_err(|e| usage(&e))?;
            let cfg =
                bipartite_r3_construction(k, n, &heights, &radius).map_err(|e| usage(&e))?;
            io::bipartite_config_to_json(&cfg)
        }
        other => return Err(Failure::usage(format!("unknown construction kind {other:?}"))),
    };
    emit(
        args.out.as_ref(),
        &serde_json::to_string_pretty(&value).expect("json"),
    )
}

fn load_graph(path: &PathBuf) -> Result<UnitDistanceGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad JSON: {e}")))?;
        let cfg = io::sphere_config_from_json(&value)
            .map_err(|e| Failure::usage(e.to_string()))?;
        build_sphere_graph(&cfg).map_err(|e| Failure::usage(e.to_string()))
    } else {
        let spec = RegularGraphSpec::from_edge_list_text(&text)
            .map_err(|e| Failure::usage(e.to_string()))?;
        Ok(UnitDistanceGraph::from_spec(&spec))
    }
}

fn parse_engine(name: &str) -> Result<Vec<Engine>, Failure> {
    match name {
        "naive" => Ok(vec![Engine::Naive]),
        "optimized" => Ok(vec![Engine::Optimized]),
        "both" => Ok(vec![Engine::Naive, Engine::Optimized]),
        other => Err(Failure::usage(format!("unknown engine {other:?}"))),
    }
}

fn cmd_count(args: CountArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.input.display())))?;
    let engines = parse_engine(&args.engine)?;
    let verify = |e: &dyn std::fmt::Display| Failure::verification(e.to_string());

    // Pattern counts come straight off the stored configuration.
    if args.what == "pattern" {
        if !text.trim_start().starts_with('{') {
            return Err(Failure::usage("pattern counting needs a configuration JSON"));
        }
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad JSON: {e}")))?;
        let cfg = io::sphere_config_from_json(&value)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let started = Instant::now();
        let count = count_pattern_paths(&cfg, args.k).map_err(|e| verify(&e))?;
        let out = json!({
            "k": args.k,
            "pattern_count": count.to_string(),
            "wall_ms": started.elapsed().as_millis() as u64,
        });
        return emit(
            args.out.as_ref(),
            &serde_json::to_string_pretty(&out).expect("json"),
        );
    }

    // Enumeration cost tracks the designated count; refuse hopeless inputs
    // up front when the stored pattern lets us estimate it.
    if text.trim_start().starts_with('{') {
        if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Ok(cfg) = io::sphere_config_from_json(&value) {
                if let (Some(pat), Some((q, e))) =
                    (&cfg.pattern, udsphere::counting::pattern_parameters(&cfg))
                {
                    if pat.k == args.k {
                        let estimate = udsphere::closed_form_pattern_count(
                            args.k,
                            &q,
                            e.as_ref(),
                            pat.kind,
                        );
                        if estimate > num_bigint::BigUint::from(args.budget) {
                            return Err(Failure::budget(format!(
                                "designated-count estimate {estimate} exceeds the {} budget",
                                args.budget
                            )));
                        }
                    }
                }
            }
        }
    }

    let graph = load_graph(&args.input)?;
    let mut reports = Vec::new();
    for engine in &engines {
        let started = Instant::now();
        let report = match args.what.as_str() {
            "paths" => count_paths(&graph, args.k, *engine).map_err(|e| verify(&e))?,
            "cycles" => {
                let mut r = count_paths(&graph, args.k, *engine).map_err(|e| verify(&e))?;
                r.cycles_dihedral =
                    Some(count_cycles(&graph, args.k, *engine).map_err(|e| verify(&e))?);
                r
            }
            "antipodal-free" => {
                let mut r = count_paths(&graph, args.k, *engine).map_err(|e| verify(&e))?;
                r.antipodal_free_unordered = Some(
                    count_antipodal_free_paths(&graph, args.k, *engine)
                        .map_err(|e| verify(&e))?,
                );
                r
            }
            "all" => udsphere::full_report(&graph, args.k, *engine).map_err(|e| verify(&e))?,
            other => return Err(Failure::usage(format!("unknown count kind {other:?}"))),
        };
        reports.push((report, started.elapsed().as_millis()));
    }
    if reports.len() == 2 {
        let (a, b) = (&reports[0].0, &reports[1].0);
        let agree = a.ordered_paths == b.ordered_paths
            && a.unordered_paths == b.unordered_paths
            && a.antipodal_free_unordered == b.antipodal_free_unordered
            && a.cycles_dihedral == b.cycles_dihedral;
        if !agree {
            return Err(Failure::verification(
                "engines disagree: naive and optimized counts differ".to_string(),
            ));
        }
    }
    let payload: Vec<serde_json::Value> = reports
        .iter()
        .map(|(r, ms)| io::count_report_to_json(r, Some(*ms)))
        .collect();
    let out = if payload.len() == 1 {
        payload.into_iter().next().unwrap()
    } else {
        json!({ "engines_agree": true, "reports": payload })
    };
    emit(
        args.out.as_ref(),
        &serde_json::to_string_pretty(&out).expect("json"),
    )
}

fn cmd_fit(args: FitArgs) -> Result<(), Failure> {
    let kind = match args.kind.as_str() {
        "sphere-path" => ConstructionKind::SpherePath {
            k: need(args.k, "--k")?,
        },
        "sphere-enhanced" => ConstructionKind::SphereEnhanced {
            k: need(args.k, "--k")?,
        },
        "sphere-cycle" => ConstructionKind::SphereCycle {
            k: need(args.k, "--k")?,
        },
        "quadratic-c4" => ConstructionKind::QuadraticC4,
        "grid" => ConstructionKind::GridIncidence,
        "r3-bipartite" => ConstructionKind::BipartiteK33,
        other => return Err(Failure::usage(format!("unknown construction kind {other:?}"))),
    };
    let mode = match args.what.as_str() {
        "paths" => CountKind::Paths,
        "cycles" => CountKind::Cycles,
        "antipodal-free" => CountKind::AntipodalFreePaths,
        "pattern" => CountKind::Pattern,
        other => return Err(Failure::usage(format!("unknown count kind {other:?}"))),
    };
    let engine = *parse_engine(&args.engine)?
        .first()
        .expect("at least one engine");
    let grid: Vec<u64> = args
        .grid
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage("bad --grid: expected comma-separated integers"))?;
    if grid.len() < 3 {
        return Err(Failure::usage("need at least 3 grid sizes"));
    }
    let run = run_scaling(kind, mode, engine, &grid, args.budget).map_err(|e| match e {
        FitError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
        other => Failure::usage(other.to_string()),
    })?;
    let fit = fit_exponent(&run).map_err(|e| Failure::usage(e.to_string()))?;
    let predicted = udsphere::predicted_exponent(run.mode, run.k).ok();
    let upper = udsphere::scaling::upper_exponent(run.mode, run.k);
    let csv = io::scaling_run_to_csv(&run);
    match &args.csv {
        Some(path) => fs::write(path, &csv)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print_line(csv.trim_end()),
    }
    let fit_json = io::fit_to_json(&run, &fit, predicted.as_ref(), &upper);
    emit(
        args.json.as_ref(),
        &serde_json::to_string_pretty(&fit_json).expect("json"),
    )
}

fn cmd_lp_verify(args: LpVerifyArgs) -> Result<(), Failure> {
    let spec = match (&args.graph, &args.builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Failure::usage(format!("cannot read {}: {e}", path.display()))
            })?;
            RegularGraphSpec::from_edge_list_text(&text)
                .map_err(|e| Failure::usage(e.to_string()))?
        }
        (None, Some(name)) => lp::builtin_graph(name)
            .ok_or_else(|| Failure::usage(format!("unknown builtin graph {name:?}")))?,
        _ => return Err(Failure::usage("pass exactly one of --graph or --builtin")),
    };
    let report = lp::verify_half_k_bound(&spec).map_err(|e| Failure::usage(e.to_string()))?;
    let payload = lp::certificate_to_json(&report);
    emit(
        args.out.as_ref(),
        &serde_json::to_string_pretty(&payload).expect("json"),
    )?;
    if !report.verified() {
        return Err(Failure::verification(format!(
            "sweep found {} pair(s) above the bound",
            report.violations.len()
        )));
    }
    Ok(())
}

fn cmd_bounds() -> Result<(), Failure> {
    print_line(&format!(
        "{:<22} {:>3} {:>8} {:>8} {}",
        "kind", "k", "lower", "upper", "polylog"
    ));
    for row in bound_table() {
        print_line(&format!(
            "{:<22} {:>3} {:>8} {:>8} {}",
            row.kind.as_str(),
            row.k,
            io::rational_to_string(&row.lower),
            io::rational_to_string(&row.upper),
            if row.polylog { "yes" } else { "no" }
        ));
    }
    Ok(())
}
