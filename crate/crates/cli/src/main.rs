mod args;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cotton_lab::chart::{DEFAULT_SEED, RESIDUAL_TOL};
use cotton_lab::report::ReportConfig;
use cotton_lab::{Family, FamilySpec};

use commands::{Outcome, ScanSource};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    /// A computation contradicted itself (not the user's fault).
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => EXIT_IO,
            CliError::Failure(_) => EXIT_FAIL,
        }
    }
}

impl From<cotton_lab::Error> for CliError {
    fn from(e: cotton_lab::Error) -> Self {
        match e {
            cotton_lab::Error::ClassificationInconsistency { .. } => {
                CliError::Failure(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Curvature, Cotton tensors and Cotton solitons of 3D Lie groups.
#[derive(Debug, Parser)]
#[command(name = "cotton-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Ia, Ib, II, III, IV.1, IV.2, IV.3, N or Ia-Riemannian.
    #[arg(long, required_unless_present = "spec")]
    family: Option<String>,

    /// Structure constants, e.g. `a=1,b=2` (also alpha/beta/gamma/delta).
    #[arg(long, requires = "family", default_value = "")]
    params: String,

    /// Family spec as JSON, inline or `@file`.
    #[arg(long, conflicts_with = "family")]
    spec: Option<String>,
}

impl SpecArgs {
    fn resolve(&self) -> Result<FamilySpec, CliError> {
        match (&self.spec, &self.family) {
            (Some(json), _) => args::parse_spec_json(json),
            (None, Some(f)) => args::parse_params(f.parse::<Family>()?, &self.params),
            (None, None) => Err(CliError::input("either --family or --spec is required")),
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Machine-readable JSON (see docs/report-schema.json).
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unimodularity, conformal flatness, Cotton spectrum and nilpotency.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Left-invariant Cotton solitons of a family member.
    Soliton {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Algebraic Cotton solitons of a family member.
    Algebraic {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks an explicit coordinate soliton at seeded sample points.
    VerifyChart {
        /// h3-g1, h3-g2, h3-g3, e11-g1, e11-g2 or h3-riemannian.
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, env = "COTTON_LAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Bound on the soliton residual.
        #[arg(long, default_value_t = RESIDUAL_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluates a parameter grid or random draws of one family.
    Scan {
        #[arg(long)]
        family: String,
        /// Axis `name=lo:hi:step` or `name=value`; repeat or separate with `;`.
        /// Axes not given are held at 0.
        #[arg(long, conflicts_with = "draws")]
        grid: Vec<String>,
        /// Random draws instead of a grid.
        #[arg(long, required_unless_present = "grid")]
        draws: Option<usize>,
        /// Half-width of the random draw box.
        #[arg(long, default_value_t = 2.0)]
        range: f64,
        #[arg(long, env = "COTTON_LAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Rows as CSV instead of the summary table.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs every acceptance criterion and prints a pass/fail table.
    Report {
        #[arg(long, env = "COTTON_LAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random draws per family for the scan criteria.
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        /// Sample points for the chart criteria.
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Replace every tolerance with this value.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(format!("stdout: {e}")))
        }
    }
}

fn finish(outcome: Outcome, output: &OutputArgs, csv: bool) -> Result<bool, CliError> {
    let text = if csv {
        outcome.csv.clone().unwrap_or_default()
    } else if output.json {
        let mut s =
            serde_json::to_string_pretty(&outcome.json).map_err(|e| CliError::io(e.to_string()))?;
        s.push('\n');
        s
    } else {
        outcome.human.clone()
    };
    emit(&text, output.out.as_ref())?;
    // machine-readable data went to a file: keep the verdict on the terminal
    if output.out.is_some() && (output.json || csv) {
        eprint!("{}", outcome.human);
    }
    Ok(outcome.pass)
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::input(format!("{name} must be positive, got {v}")))
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::input("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Failure(e.to_string()))?;
    }
    match cli.command {
        Command::Classify { spec, output } => {
            finish(commands::classify(&spec.resolve()?)?, &output, false)
        }
        Command::Soliton { spec, output } => {
            finish(commands::soliton(&spec.resolve()?)?, &output, false)
        }
        Command::Algebraic { spec, output } => {
            finish(commands::algebraic(&spec.resolve()?)?, &output, false)
        }
        Command::VerifyChart {
            metric,
            points,
            seed,
            tol,
            output,
        } => {
            positive("--tol", tol)?;
            finish(
                commands::verify_chart(&metric, points, seed, tol)?,
                &output,
                false,
            )
        }
        Command::Scan {
            family,
            grid,
            draws,
            range,
            seed,
            csv,
            output,
        } => {
            let family: Family = family.parse()?;
            let source = match draws {
                Some(draws) => ScanSource::Random { draws, seed, range },
                None => ScanSource::Grid(args::parse_grid(family, &grid)?),
            };
            finish(commands::run_scan(family, &source)?, &output, csv)
        }
        Command::Report {
            seed,
            draws,
            points,
            tol,
            output,
        } => {
            let cfg = ReportConfig {
                seed,
                draws,
                points,
                tol,
            };
            finish(commands::report(&cfg)?, &output, false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
