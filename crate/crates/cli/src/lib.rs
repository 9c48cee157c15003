//! `gabrec` command-line harness: batch recovery experiments, rank-weight
//! tables and exact approximation of numeric matrices.

pub mod experiment;
pub mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use gabrec_core::linalg;
use gabrec_core::lrmr::{approximate_complex, approximate_real};
use gabrec_core::rank_metric::{WeightKind, Weights};
use gabrec_core::{Rational, Rationals, Tower, TowerSpec};

pub use experiment::{ExperimentConfig, ExperimentReport};

pub const SEED_ENV: &str = "GABREC_SEED";

#[derive(Debug, Parser)]
#[command(name = "gabrec", version, about = "Exact low-rank matrix recovery with Gabidulin codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plant random low-rank matrices, measure, recover and compare exactly.
    Demo(DemoArgs),
    /// Print the four rank weights of a vector and check their ordering.
    Weights(WeightsArgs),
    /// Replace a decimal or complex matrix by a nearby exact one.
    Approx(ApproxArgs),
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// JSON experiment config; explicit flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// cyclotomic:p, kummer:n or kummer:n:radicand [default: cyclotomic:5]
    #[arg(long)]
    pub tower: Option<TowerSpec>,
    /// Code length [default: extension degree]
    #[arg(long)]
    pub n: Option<usize>,
    /// Code dimension [default: n/2]
    #[arg(long)]
    pub k: Option<usize>,
    /// Rank of the planted matrices [default: 1]
    #[arg(long)]
    pub rank: Option<usize>,
    /// [default: 10]
    #[arg(long)]
    pub trials: Option<usize>,
    /// Falls back to $GABREC_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Bound on the integer coordinates of random factors [default: 10]
    #[arg(long)]
    pub height: Option<u32>,
    /// Report path; the report goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record per-trial wall time (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Whitespace-separated elements of L; `-` reads stdin.
    pub vector: PathBuf,
    #[arg(long, default_value = "cyclotomic:5")]
    pub tower: TowerSpec,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    /// One row per line of decimal (`1.25`) or complex (`1.5-2i`) literals;
    /// `-` reads stdin.
    pub matrix: PathBuf,
    /// Bound on the Frobenius error.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Tower whose base field receives complex entries; needs i in K, as in
    /// kummer:n with 4 | n.
    #[arg(long)]
    pub tower: Option<TowerSpec>,
    /// Output path for the exact matrix; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// How a command that ran to completion ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    fn from_check(ok: bool) -> Self {
        if ok { Status::Success } else { Status::VerificationFailed }
    }
}

/// Exit codes: 0 success, 1 usage or input error, 2 verification failure.
pub fn exit_code(result: &anyhow::Result<Status>) -> ExitCode {
    match result {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(2),
        Err(_) => ExitCode::from(1),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Status> {
    match cli.command {
        Command::Demo(args) => demo(args, out, err),
        Command::Weights(args) => weights(args, out),
        Command::Approx(args) => approx(args, out, err),
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| anyhow!("{SEED_ENV}=`{s}` is not an unsigned integer")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(anyhow!("{SEED_ENV}: {e}")),
    }
}

/// Merges the config file (if any), explicit flags and defaults.
pub fn resolve_config(args: &DemoArgs) -> anyhow::Result<ExperimentConfig> {
    let mut c = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => {
            let seed = env_seed()?.unwrap_or(0);
            ExperimentConfig::new(&TowerSpec::Cyclotomic { p: 5 }, 0, 0, 1, 10, seed)
        }
    };
    let file = args.config.is_some();
    if let Some(t) = &args.tower {
        c.set_tower(t);
    }
    if let Some(n) = args.n {
        c.n = n;
    } else if !file {
        c.n = Tower::new(c.tower_spec()?)?.degree();
    }
    if let Some(k) = args.k {
        c.k = k;
    } else if !file {
        c.k = c.n / 2;
    }
    c.planted_rank = args.rank.unwrap_or(c.planted_rank);
    c.trials = args.trials.unwrap_or(c.trials);
    c.seed = args.seed.unwrap_or(c.seed);
    c.height_bound = args.height.unwrap_or(c.height_bound);
    if args.out.is_some() {
        c.output = args.out.clone();
    }
    Ok(c)
}

fn demo(args: DemoArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Status> {
    let config = resolve_config(&args)?;
    let report = experiment::run(&config, args.timings)?;
    match &config.output {
        Some(path) => {
            std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "{}", report.summary())?;
        }
        None => {
            out.write_all(report.to_json().as_bytes())?;
            writeln!(err, "{}", report.summary())?;
        }
    }
    Ok(Status::from_check(report.verified()))
}

fn weights(args: WeightsArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let tower = Tower::new(args.tower)?;
    let x = input::parse_vector(&tower, &read_input(&args.vector)?)?;
    let w = Weights::of(&tower, &x);
    writeln!(out, "{:<8}value", "weight")?;
    for kind in WeightKind::ALL {
        writeln!(out, "{:<8}{}", kind.to_string(), w.get(kind))?;
    }
    let holds = w.chain_holds();
    writeln!(out, "chain A = thetaL <= thetaK = B: {}", if holds { "holds" } else { "VIOLATED" })?;
    Ok(Status::from_check(holds))
}

fn approx(args: ApproxArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Status> {
    if !(args.epsilon > 0.0 && args.epsilon.is_finite()) {
        bail!("epsilon must be a positive finite number, got {}", args.epsilon);
    }
    let m = input::parse_numeric_matrix(&read_input(&args.matrix)?)?;
    let eps = Rational::from_float(args.epsilon).expect("finite");
    let (text, error_sq) = if m.complex {
        let spec = args
            .tower
            .ok_or_else(|| anyhow!("complex entries need --tower kummer:n with 4 | n so that i lies in the base field"))?;
        let tower = Tower::new(spec)?;
        let a = approximate_complex(&m.entries, args.epsilon, &tower)?;
        (linalg::format_matrix(tower.base(), &a.matrix), a.frobenius_error_sq)
    } else {
        let a = approximate_real(&m.real_parts(), args.epsilon)?;
        (linalg::format_matrix(&Rationals, &a.matrix), a.frobenius_error_sq)
    };
    let ok = error_sq < &eps * &eps;
    let error = num::ToPrimitive::to_f64(&error_sq).unwrap_or(f64::INFINITY).sqrt();
    let line = format!(
        "frobenius error {error:.6e} {} epsilon {:e}",
        if ok { "<" } else { ">=" },
        args.epsilon
    );
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "{line}")?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            writeln!(err, "{line}")?;
        }
    }
    Ok(Status::from_check(ok))
}
