//! Command-line front end: reduce a data matrix, cluster it, run seeded
//! experiments from a config file, or benchmark the fast multiply.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kmeans_dimred::harness::{
    bench_mailman, parse_variant, run_experiment, ExperimentConfig, MethodName,
};
use kmeans_dimred::io::{format_matrix, load_matrix, save_matrix, MatrixFormat};
use kmeans_dimred::kmeans::kmeans_with_options;
use kmeans_dimred::reducers::{
    reduce_approx_svd, reduce_gaussian_jl, reduce_leverage_select, reduce_random_projection,
    reduce_sampling_select,
};
use kmeans_dimred::{Error, Matrix64, RngStream};

/// Environment variable consulted for the seed when --seed is absent.
const SEED_ENV: &str = "KMEANS_DIMRED_SEED";

#[derive(Parser)]
#[command(name = "kmeans-dimred", version, about = "Randomized dimensionality reduction for k-means")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a data matrix to fewer features.
    Reduce(ReduceArgs),
    /// Cluster a data matrix with seeded restarts.
    Kmeans(KmeansArgs),
    /// Run a configured reduce-then-cluster experiment.
    Eval(EvalArgs),
    /// Benchmark the finite-alphabet fast multiply.
    BenchMailman(BenchArgs),
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    /// csv or tsv
    #[arg(long, default_value = "csv")]
    format: String,
    /// lvg | sampling | rp | asvd | jl | none
    #[arg(long)]
    method: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Target dimension (required for lvg and jl).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    /// dense | achlioptas
    #[arg(long, default_value = "dense")]
    variant: String,
    /// Route the projection product through the fast multiply.
    #[arg(long)]
    mailman: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct KmeansArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 300)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Centroid matrix destination; the JSON summary goes to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// TOML experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Overrides applied on top of the file.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated powers of two, e.g. 16,256,4096.
    #[arg(long, default_value = "16,256,4096")]
    sizes: String,
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful exits.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_numerical() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Reduce(args) => cmd_reduce(args),
        Command::Kmeans(args) => cmd_kmeans(args),
        Command::Eval(args) => cmd_eval(args),
        Command::BenchMailman(args) => cmd_bench(args),
    }
}

fn resolve_seed(explicit: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.parse::<u64>().map_err(|_| {
            Error::InvalidArgument(format!("{} = '{}' is not a valid seed", SEED_ENV, v))
        }),
        Err(_) => Ok(0),
    }
}

fn write_or_print(text: &str, output: &Option<PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn cmd_reduce(args: ReduceArgs) -> Result<(), Error> {
    let format = MatrixFormat::from_name(&args.format)?;
    let a: Matrix64 = load_matrix(&args.input, format)?;
    let seed = resolve_seed(args.seed)?;
    let stream = RngStream::new(seed, 0);
    let method = MethodName::parse(&args.method)?;
    let a_tilde = match method {
        MethodName::None => a,
        MethodName::Lvg => {
            let r = args.r.ok_or_else(|| {
                Error::InvalidArgument("method lvg requires --r".into())
            })?;
            reduce_leverage_select(&a, args.k, args.eps, r, stream)?.a_tilde
        }
        MethodName::Sampling => {
            reduce_sampling_select(&a, args.k, args.eps, args.c1, stream)?.a_tilde
        }
        MethodName::Rp => {
            let variant = parse_variant(&args.variant)?;
            reduce_random_projection(&a, args.k, args.eps, args.c2, variant, args.mailman, stream)?
                .a_tilde
        }
        MethodName::Asvd => reduce_approx_svd(&a, args.k, args.eps, stream)?.a_tilde,
        MethodName::Jl => {
            let r = args
                .r
                .ok_or_else(|| Error::InvalidArgument("method jl requires --r".into()))?;
            reduce_gaussian_jl(&a, r, stream)?.a_tilde
        }
    };
    match &args.output {
        Some(path) => save_matrix(&a_tilde, path, format),
        None => {
            print!("{}", format_matrix(&a_tilde, format));
            Ok(())
        }
    }
}

fn cmd_kmeans(args: KmeansArgs) -> Result<(), Error> {
    let format = MatrixFormat::from_name(&args.format)?;
    let a: Matrix64 = load_matrix(&args.input, format)?;
    let seed = resolve_seed(args.seed)?;
    let sol = kmeans_with_options(
        &a,
        args.k,
        args.restarts,
        args.max_iter,
        args.tol,
        RngStream::new(seed, 0),
    )?;
    let summary = serde_json::json!({
        "k": args.k,
        "cost": sol.cost,
        "iterations": sol.iterations,
        "assignments": sol.indicator.assignments(),
        "sizes": sol.indicator.sizes(),
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    if let Some(path) = &args.output {
        save_matrix(&sol.centroids, path, format)?;
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| Error::Io {
        path: args.config.display().to_string(),
        source: e,
    })?;
    let mut cfg = ExperimentConfig::from_toml(&text)?;
    if let Some(m) = &args.method {
        cfg.method = MethodName::parse(m)?;
    }
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(eps) = args.eps {
        cfg.eps = eps;
    }
    if let Some(r) = args.r {
        cfg.r = Some(r);
    }
    if let Some(c1) = args.c1 {
        cfg.c1 = c1;
    }
    if let Some(c2) = args.c2 {
        cfg.c2 = c2;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(restarts) = args.restarts {
        cfg.restarts = restarts;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    } else if std::env::var(SEED_ENV).is_ok() {
        cfg.seed = resolve_seed(None)?;
    }
    cfg.validate()?;
    let report = run_experiment(&cfg)?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    write_or_print(&json, &args.output)
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let sizes: Result<Vec<usize>, Error> = args
        .sizes
        .split(',')
        .map(|s| {
            s.trim().parse::<usize>().map_err(|_| {
                Error::InvalidArgument(format!("bad size '{}' in --sizes", s.trim()))
            })
        })
        .collect();
    let rows = bench_mailman(&sizes?, args.trials)?;
    let json = serde_json::to_string_pretty(&rows).expect("bench table serializes");
    println!("{}", json);
    Ok(())
}
