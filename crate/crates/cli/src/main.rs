use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pmshock_cli::{compare_baseline, run_experiment, CliError, ExperimentConfig, Kind, Overrides, Summary, Tolerances};

#[derive(Parser)]
#[command(name = "pmshock", version, about = "Viscous shock profiles of u_t + f(u)_x = (u^m)_xx")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and verify a traveling-wave profile
    Profile(RunArgs),
    /// Evolve a perturbed profile in the moving frame
    Evolve(RunArgs),
    /// Perturbation decay rates, energies and region diagnostics
    Decay(RunArgs),
    /// Randomized semigroup property checks
    Semigroup(RunArgs),
    /// Empirical constants, exponent ledger and decay lemma
    Inequalities(RunArgs),
    /// Regularized-problem convergence cascade
    Regularized(RunArgs),
    /// Collect summaries under the output directory into report.csv
    Report(RunArgs),
    /// Compare CSV artifacts against a baseline directory
    Diff(DiffArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment config; defaults are used when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    dx: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
}

#[derive(Args)]
struct DiffArgs {
    current: PathBuf,
    baseline: PathBuf,
    /// Relative tolerance for every numeric column
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Per-column tolerance as `name=value`; repeatable
    #[arg(long = "column-tol", value_parser = parse_column_tol)]
    column_tol: Vec<(String, f64)>,
}

fn parse_column_tol(s: &str) -> Result<(String, f64), String> {
    let (name, v) = s.split_once('=').ok_or("expected name=value")?;
    Ok((name.to_owned(), v.parse().map_err(|e| format!("{e}"))?))
}

fn run(kind: Kind, args: RunArgs) -> pmshock_cli::Result<Summary> {
    let mut cfg = match &args.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.kind = Some(kind);
    cfg.apply(&Overrides { out: args.out, seed: args.seed, dx: args.dx, m: args.m, t_end: args.t_end });
    run_experiment(&cfg)
}

fn diff(args: DiffArgs) -> pmshock_cli::Result<bool> {
    let tol = Tolerances { default: args.tol, columns: args.column_tol.into_iter().collect::<BTreeMap<_, _>>() };
    let drifts = compare_baseline(&args.current, &args.baseline, &tol)?;
    for d in &drifts {
        println!("DRIFT {} row {} {}: {:e} vs {:e}", d.file, d.row, d.column, d.current, d.baseline);
    }
    println!("{} drifting cells", drifts.len());
    Ok(drifts.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kind = match &cli.command {
        Command::Profile(_) => Kind::Profile,
        Command::Evolve(_) => Kind::Evolve,
        Command::Decay(_) => Kind::Decay,
        Command::Semigroup(_) => Kind::Semigroup,
        Command::Inequalities(_) => Kind::Inequalities,
        Command::Regularized(_) => Kind::Regularized,
        Command::Report(_) => Kind::Report,
        Command::Diff(_) => Kind::Report,
    };
    let outcome: Result<bool, CliError> = match cli.command {
        Command::Diff(a) => diff(a),
        Command::Profile(a)
        | Command::Evolve(a)
        | Command::Decay(a)
        | Command::Semigroup(a)
        | Command::Inequalities(a)
        | Command::Regularized(a)
        | Command::Report(a) => run(kind, a).map(|s| {
            for c in &s.checks {
                println!("{}", c.line());
            }
            s.passed()
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
