mod commands;
mod fig1;
mod problem;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::problem::{Loaded, ProblemFile};
use crate::table::Table;

/// Sublevel-set integrals by Laplace duality.
#[derive(Parser)]
#[command(name = "sublevel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every random stream; overrides the problem file
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for engine loops (output does not depend on it)
    #[arg(long)]
    threads: Option<usize>,
    /// Relative tolerance; overrides the problem file
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long, value_enum)]
    output: Option<Format>,
}

#[derive(Args)]
struct WithInput {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Dual, Monte Carlo and box-indicator values of v(y)
    Integrate(WithInput),
    /// CSV sweep over the file's y_grid
    Sweep(WithInput),
    /// Both sides of the transform identity at each lambda
    LaplaceCheck {
        #[command(flatten)]
        io: WithInput,
        /// Comma-separated lambdas
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
        lambdas: Vec<f64>,
    },
    /// Mean-value point of f on K_y
    Mvt(WithInput),
    /// Dual cubature vs Monte Carlo vs box indicator on the pinched planar sets
    BenchFig1 {
        #[arg(long, value_enum, default_value = "quartic")]
        variant: fig1::Variant,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        /// Gauss-Legendre nodes per axis for the box indicator
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bisect for lambda with phi(lambda) = target
    FindLambda {
        #[command(flatten)]
        io: WithInput,
        #[arg(long)]
        target: f64,
        /// Lambda bracket as LO,HI
        #[arg(long, value_delimiter = ',', default_value = "1e-3,1e3")]
        bracket: Vec<f64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(sublevel::Error),
    Io(std::io::Error),
}

impl From<sublevel::Error> for CliError {
    fn from(e: sublevel::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Engine(e)
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Engine(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Engine(e) => write!(f, "engine error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn load(io: &WithInput) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(&io.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", io.input.display())))?;
    let mut loaded = ProblemFile::parse(&text)?.load()?;
    if let Some(seed) = io.common.seed {
        loaded.spec.seed = seed;
    }
    if let Some(tol) = io.common.rel_tol {
        loaded.spec.rel_tol = tol;
        loaded.spec.validate()?;
    }
    Ok(loaded)
}

fn run(command: Command) -> Result<(Table, Format), CliError> {
    Ok(match command {
        Command::Integrate(io) => (
            commands::integrate(&load(&io)?)?,
            io.common.output.unwrap_or(Format::Json),
        ),
        Command::Sweep(io) => (
            commands::sweep(&load(&io)?)?,
            io.common.output.unwrap_or(Format::Csv),
        ),
        Command::LaplaceCheck { io, lambdas } => (
            commands::laplace_check(&load(&io)?, &lambdas)?,
            io.common.output.unwrap_or(Format::Csv),
        ),
        Command::Mvt(io) => (
            commands::mvt(&load(&io)?)?,
            io.common.output.unwrap_or(Format::Json),
        ),
        Command::BenchFig1 {
            variant,
            samples,
            nodes,
            common,
        } => {
            let mut spec = sublevel::QuadratureSpec::default()
                .samples(samples)
                .seed(common.seed.unwrap_or(0));
            if let Some(tol) = common.rel_tol {
                spec = spec.rel_tol(tol);
            }
            spec.validate()?;
            (
                fig1::bench(variant, &spec, nodes)?,
                common.output.unwrap_or(Format::Json),
            )
        }
        Command::FindLambda {
            io,
            target,
            bracket,
        } => (
            match bracket[..] {
                [lo, hi] => commands::find_lambda(&load(&io)?, target, (lo, hi))?,
                _ => {
                    return Err(CliError::Input(
                        "--bracket takes exactly two values LO,HI".into(),
                    ))
                }
            },
            io.common.output.unwrap_or(Format::Json),
        ),
    })
}

fn threads(command: &Command) -> Option<usize> {
    match command {
        Command::Integrate(io) | Command::Sweep(io) | Command::Mvt(io) => io.common.threads,
        Command::LaplaceCheck { io, .. } | Command::FindLambda { io, .. } => io.common.threads,
        Command::BenchFig1 { common, .. } => common.threads,
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(n: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match n {
        None => Ok(f()),
        Some(0) => Err(CliError::Input("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(n: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    if n == Some(0) {
        return Err(CliError::Input("--threads must be at least 1".into()));
    }
    Ok(f())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let n = threads(&cli.command);
    let result = with_threads(n, move || run(cli.command)).and_then(|r| r);
    let (table, format) = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("sublevel: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sublevel: {}", CliError::Io(e));
            ExitCode::from(2)
        }
    }
}
