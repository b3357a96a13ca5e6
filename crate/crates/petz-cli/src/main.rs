//! Command-line front end: single-shot bound evaluations, verification
//! sweeps, saturation scans, and embedding dumps.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use petz::io::MatrixJson;
use petz::{uncertainty_f, DensityMatrix, ExtendedReal, Observable, Tolerances};
use petz_cli::config::{SweepConfig, Which};
use petz_cli::fmt::sig15;
use petz_cli::report::Format;
use petz_cli::{run_saturation, run_sweep};

#[derive(Parser)]
#[command(
    name = "petz",
    about = "Symmetric Petz-Rényi divergence bounds: evaluation and verification sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bound function, its inverse, the inverted-bound
    /// function, or the Pinsker comparator at a point.
    Bound(BoundArgs),
    /// Run a verification sweep and emit a report.
    Verify(VerifyArgs),
    /// Scan the exactly saturating two-level family over epsilon and alpha
    /// grids.
    Saturation(SaturationArgs),
    /// Dump the classical embedding of two states (and optionally an
    /// observable) as JSON.
    DumpNs(DumpNsArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Rényi order.
    #[arg(long)]
    alpha: f64,
    /// Evaluate B(alpha, x).
    #[arg(long, conflicts_with_all = ["inverse", "uncertainty", "pinsker"])]
    x: Option<f64>,
    /// Evaluate the inverse: the x with B(alpha, x) = y.
    #[arg(long, conflicts_with_all = ["uncertainty", "pinsker"])]
    inverse: Option<f64>,
    /// Evaluate f(alpha, D) = 1/B^{-1}(alpha, D)^2 - 1.
    #[arg(long, conflicts_with = "pinsker")]
    uncertainty: Option<f64>,
    /// Evaluate the Pinsker comparator 2 min(alpha, 1) T^2.
    #[arg(long)]
    pinsker: Option<f64>,
}

#[derive(Args)]
struct SweepFlags {
    /// Hilbert-space dimensions (or distribution lengths) to cycle through.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4, 5, 6])]
    dims: Vec<usize>,
    /// Rényi orders to evaluate.
    #[arg(long, value_delimiter = ',', default_values_t = petz::DEFAULT_ALPHA_GRID.to_vec())]
    alphas: Vec<f64>,
    /// Master seed; falls back to the PRL_SEED environment variable.
    #[arg(long, env = "PRL_SEED", default_value_t = 0)]
    seed: u64,
    /// Margin tolerance: a bound row fails below -tol, an identity row
    /// fails beyond |tol|.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Worker threads; 1 runs strictly serially.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report path; stdout when omitted (summary then goes to stderr).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inequality family to verify.
    #[arg(long, value_enum)]
    which: Which,
    /// Number of random trials.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[command(flatten)]
    flags: SweepFlags,
}

#[derive(Args)]
struct SaturationArgs {
    /// Epsilon grid for the two-level family.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1f64, 0.5, 1.0, 2.0, 3.0, 4.0])]
    epsilons: Vec<f64>,
    #[command(flatten)]
    flags: SweepFlags,
}

#[derive(Args)]
struct DumpNsArgs {
    /// JSON file holding the first state.
    #[arg(long)]
    rho: PathBuf,
    /// JSON file holding the second state.
    #[arg(long)]
    sigma: PathBuf,
    /// Optional JSON file holding a Hermitian observable.
    #[arg(long)]
    theta: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bound(args) => {
            run_bound(args)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let config = sweep_config(&args.flags, args.trials);
            let report = run_sweep(args.which, &config)?;
            emit_report(&report, &args.flags)?;
            Ok(if report.summary.failure_count == 0 { 0 } else { 1 })
        }
        Command::Saturation(args) => {
            let config = sweep_config(&args.flags, 1);
            let report = run_saturation(&args.epsilons, &config)?;
            emit_report(&report, &args.flags)?;
            Ok(if report.summary.failure_count == 0 { 0 } else { 1 })
        }
        Command::DumpNs(args) => {
            run_dump_ns(args)?;
            Ok(0)
        }
    }
}

fn run_bound(args: BoundArgs) -> Result<()> {
    let value = if let Some(x) = args.x {
        sig15(petz::bound_b(args.alpha, x)?)
    } else if let Some(y) = args.inverse {
        sig15(petz::bound_b_inverse(args.alpha, y)?.x)
    } else if let Some(d) = args.uncertainty {
        match uncertainty_f(args.alpha, d)? {
            ExtendedReal::Finite(v) => sig15(v),
            ExtendedReal::Infinite => "inf".to_string(),
        }
    } else if let Some(t) = args.pinsker {
        sig15(petz::pinsker_rhs(args.alpha, t)?)
    } else {
        bail!("pass one of --x, --inverse, --uncertainty, --pinsker");
    };
    println!("{value}");
    Ok(())
}

fn sweep_config(flags: &SweepFlags, trials: usize) -> SweepConfig {
    SweepConfig {
        dims: flags.dims.clone(),
        alphas: flags.alphas.clone(),
        trials,
        seed: flags.seed,
        tolerance: flags.tol,
        jobs: flags.jobs,
    }
}

fn emit_report(report: &petz_cli::SweepReport, flags: &SweepFlags) -> Result<()> {
    match &flags.out {
        Some(path) => {
            report.write_files(path, flags.format)?;
            eprintln!(
                "{}: {} rows, min margin {:e}, failures {}, {} ms (report: {})",
                report.summary.which,
                report.summary.rows,
                report
                    .summary
                    .inequalities
                    .values()
                    .map(|s| s.min_margin)
                    .fold(f64::INFINITY, f64::min),
                report.summary.failure_count,
                report.summary.runtime_ms,
                path.display(),
            );
        }
        None => {
            match flags.format {
                Format::Csv => print!("{}", report.to_csv()),
                Format::Json => println!("{}", report.to_json()?),
            }
            eprintln!("{}", report.summary_json()?);
        }
    }
    Ok(())
}

fn load_density(path: &Path) -> Result<DensityMatrix<f64>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let json: MatrixJson = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid matrix file", path.display()))?;
    let matrix = json
        .to_matrix::<f64>()
        .with_context(|| format!("{} has a malformed grid", path.display()))?;
    petz::validate_density(matrix, &Tolerances::default())
        .with_context(|| format!("{} is not a density matrix", path.display()))
}

fn run_dump_ns(args: DumpNsArgs) -> Result<()> {
    let rho = load_density(&args.rho)?;
    let sigma = load_density(&args.sigma)?;
    let theta = match &args.theta {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let json: MatrixJson = serde_json::from_str(&text)
                .with_context(|| format!("{} is not a valid matrix file", path.display()))?;
            Some(
                Observable::new(json.to_matrix::<f64>()?)
                    .with_context(|| format!("{} is not Hermitian", path.display()))?,
            )
        }
        None => None,
    };
    let dump = petz_cli::sweep::dump_embedding(&rho, &sigma, theta.as_ref())?;
    let body = serde_json::to_string_pretty(&dump)?;
    match &args.out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{body}"),
    }
    Ok(())
}
