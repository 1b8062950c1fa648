//! `igx` command-line front end: solve one instance, run a benchmark grid, or
//! trace a single crossover step by step.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use igx_core::bench::{self, ExperimentSpec};
use igx_core::crossover::{crossover_traced, seeded_rng, Selection, Step};
use igx_core::ga::DEFAULT_MAX_OUTER_LOOPS;
use igx_core::tour::parse_label_list;
use igx_core::{fig1_fixture, run_ga, GaConfig, Instance, LocalSearchConfig, OperatorKind, Tour};

#[derive(Parser, Debug)]
#[command(
    name = "igx",
    version,
    about = "Greedy-crossover memetic solver for the symmetric TSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the GA once on one instance.
    Solve(SolveArgs),
    /// Repeated runs over instances × operators, written as CSV.
    Bench(BenchArgs),
    /// Build one child from explicit parents and log every selection.
    Trace(TraceArgs),
}

#[derive(Args, Debug, Clone)]
struct GaArgs {
    /// Population size.
    #[arg(long, default_value_t = 50)]
    pop: usize,
    /// Children per outer-loop iteration.
    #[arg(long, default_value_t = 500)]
    r#gen: usize,
    /// Skip 2-opt on children.
    #[arg(long = "no-2opt")]
    no_two_opt: bool,
    /// Skip 3-opt on children.
    #[arg(long = "no-3opt")]
    no_three_opt: bool,
    /// Pass limit for each local search.
    #[arg(long)]
    ls_max_passes: Option<usize>,
    /// Start every crossover at this node label (1-based) instead of a random node.
    #[arg(long)]
    start_node: Option<usize>,
    /// Safety cap on outer-loop iterations.
    #[arg(long, default_value_t = DEFAULT_MAX_OUTER_LOOPS)]
    max_loops: usize,
    /// Directory searched for instance names that are not paths.
    #[arg(long)]
    tsplib_dir: Option<PathBuf>,
}

impl GaArgs {
    fn config(&self, operator: OperatorKind, seed: u64) -> Result<GaConfig, String> {
        let fixed_start = match self.start_node {
            Some(0) => return Err("--start-node labels start at 1".into()),
            Some(l) => Some(l - 1),
            None => None,
        };
        Ok(GaConfig {
            population_size: self.pop,
            generation_size: self.r#gen,
            operator,
            ls: LocalSearchConfig {
                two_opt: !self.no_two_opt,
                three_opt: !self.no_three_opt,
                max_passes: self.ls_max_passes,
            },
            seed,
            max_outer_loops: Some(self.max_loops),
            reject_duplicates: false,
            fixed_start,
        })
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// TSPLIB file, or a name resolved against --tsplib-dir.
    #[arg(long)]
    instance: String,
    #[arg(long, default_value = "igx")]
    operator: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    ga: GaArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Instances (repeat the flag or separate with commas).
    #[arg(long, required = true, value_delimiter = ',')]
    instance: Vec<String>,
    /// Operators (repeat the flag or separate with commas).
    #[arg(long, default_value = "igx", value_delimiter = ',')]
    operator: Vec<String>,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    /// Base seed; run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timing column empty so identical runs give identical CSV.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    ga: GaArgs,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long, default_value = "igx")]
    operator: String,
    /// Built-in distance matrix (only `fig1`).
    #[arg(long, conflicts_with = "instance")]
    fixture: Option<String>,
    /// TSPLIB file to trace on.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Father tour as 1-based labels, e.g. 4,5,7,3,2,1,6,8.
    #[arg(long)]
    father: String,
    /// Mother tour as 1-based labels.
    #[arg(long)]
    mother: String,
    /// First node label; random when omitted.
    #[arg(long, alias = "start-node")]
    start: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn resolve_instance(name: &str, dir: Option<&Path>) -> Result<PathBuf, String> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Ok(direct);
    }
    if let Some(dir) = dir {
        for candidate in [dir.join(name), dir.join(format!("{name}.tsp"))] {
            if candidate.is_file() {
                return Ok(candidate);
            }
        }
    }
    // Let the loader report the missing file.
    Ok(direct)
}

fn labels(order: &[usize]) -> String {
    order.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn solve(args: SolveArgs) -> Result<(), String> {
    let operator: OperatorKind = args.operator.parse().map_err(|e| format!("{e}"))?;
    let path = resolve_instance(&args.instance, args.ga.tsplib_dir.as_deref())?;
    let inst = bench::load_instance(&path).map_err(|e| e.to_string())?;
    let cfg = args.ga.config(operator, args.seed)?;
    let res = run_ga(&inst, &cfg).map_err(|e| e.to_string())?;

    println!("instance: {} (n = {})", inst.name(), inst.len());
    println!("operator: {operator}");
    println!("length: {}", res.best_length);
    match inst.known_optimum() {
        Some(opt) => {
            let q = bench::quality(res.best_length as f64, opt).map_err(|e| e.to_string())?;
            println!("quality: {q:.2}% (optimum {opt})");
        }
        None => println!("quality: n/a (no known optimum)"),
    }
    println!(
        "outer loops: {}{}",
        res.outer_loops,
        if res.hit_loop_cap { " (cap reached)" } else { "" }
    );
    println!("children: {}", res.children_produced);
    println!("time: {:.3} s", res.wall_time);
    println!("tour: {}", labels(res.best_tour.order()));
    Ok(())
}

fn bench_cmd(args: BenchArgs) -> Result<(), String> {
    let dir = args.ga.tsplib_dir.as_deref();
    let instances = args
        .instance
        .iter()
        .map(|name| resolve_instance(name, dir))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = ExperimentSpec {
        instances,
        operators: args.operator.clone(),
        runs: args.runs,
        ga: args.ga.config(OperatorKind::Igx, args.seed)?,
        base_seed: args.seed,
        output: args.out.clone(),
        record_timing: !args.no_timing,
    };
    let reports = bench::run_experiment(&spec).map_err(|e| e.to_string())?;
    print!("{}", bench::format_table(&reports));
    if let Some(out) = &args.out {
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn describe(step: &Step<'_>) -> String {
    let chosen = step.chosen + 1;
    let Some(current) = step.current else {
        return format!("start: {chosen}");
    };
    let cands: Vec<String> = step
        .candidates
        .iter()
        .map(|c| {
            format!(
                "{} ({}, d={}{})",
                c.node + 1,
                c.source.label(),
                c.distance,
                if c.visited { ", visited" } else { "" }
            )
        })
        .collect();
    let how = match step.selection {
        Selection::Start | Selection::Nearest => "nearest".to_string(),
        Selection::RandomFallback => "random unvisited".to_string(),
        Selection::SampleFallback { sampled } => format!("nearest of {sampled} sampled"),
        Selection::GlobalFallback => "nearest unvisited overall".to_string(),
    };
    format!(
        "at {}: candidates [{}] -> {chosen} ({how})",
        current + 1,
        cands.join(", ")
    )
}

fn trace(args: TraceArgs) -> Result<(), String> {
    let operator: OperatorKind = args.operator.parse().map_err(|e| format!("{e}"))?;
    let inst: Instance = match (&args.fixture, &args.instance) {
        (Some(f), _) if f.eq_ignore_ascii_case("fig1") => fig1_fixture(),
        (Some(f), _) => return Err(format!("unknown fixture `{f}` (valid: fig1)")),
        (None, Some(path)) => Instance::load(path).map_err(|e| e.to_string())?,
        (None, None) => return Err("trace needs --fixture or --instance".into()),
    };
    let n = inst.len();
    let parent = |text: &str| -> Result<Tour, String> {
        let order = parse_label_list(text, n).map_err(|e| e.to_string())?;
        Tour::new(order, &inst).map_err(|e| e.to_string())
    };
    let father = parent(&args.father)?;
    let mother = parent(&args.mother)?;
    let start = match args.start {
        Some(0) => return Err("--start labels start at 1".into()),
        Some(l) => Some(l - 1),
        None => None,
    };
    println!("father: {} (length {})", labels(father.order()), father.length());
    println!("mother: {} (length {})", labels(mother.order()), mother.length());
    let mut rng = seeded_rng(args.seed);
    let child = crossover_traced(operator, &father, &mother, &inst, start, &mut rng, |s| {
        println!("{}", describe(s))
    })
    .map_err(|e| e.to_string())?;
    println!("child: {}", labels(child.order()));
    println!("length: {}", child.length());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Trace(a) => trace(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
