//! Command-line front end: single-state reports, table sweeps and density
//! profiles.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 convergence failure.

pub mod config;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use abentropy::entropy::{report_with, EntropyReport};
use abentropy::momentum::build_profile_with;
use abentropy::{eigen, reference, Error, QuantumNumbers, SystemParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use config::{load_config, ConfigFile, Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Convergence(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Convergence(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Convergence(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_convergence() {
            CliError::Convergence(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "abentropy", version, about = "Shannon entropies of a particle in a dislocated cylinder")]
pub struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Absolute tolerance of the entropy integrals.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report one state (JSON by default).
    State(StateArgs),
    /// Sweep the reference grid.
    Table(TableArgs),
    /// Sample the position or momentum density of one state.
    Density(DensityArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub l: i32,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lz: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Comma-separated subset of dislocation values.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub betas: Option<Vec<f64>>,
    /// Append the reference values and a trend-agreement column.
    #[arg(long)]
    pub compare_reference: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub space: Space,
    #[arg(long, default_value_t = abentropy::momentum::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[command(flatten)]
    pub state: StateArgs,
}

/// Parse-free entry point; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(tol) = cli.tol {
        config::positive("--tol", tol)?;
        config.tolerances.quad = tol;
    }
    let out = cli.out.clone().or_else(|| config.out.clone().map(PathBuf::from));
    let format = cli.format.or(config.format);

    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match &cli.command {
        Command::State(args) => cmd_state(&config, args, format.unwrap_or(Format::Json), &mut sink)?,
        Command::Table(args) => cmd_table(&config, args, format.unwrap_or(Format::Csv), &mut sink)?,
        Command::Density(args) => cmd_density(&config, args, format.unwrap_or(Format::Csv), &mut sink)?,
    };
    sink.flush()?;
    Ok(code)
}

fn state_inputs(config: &RunConfig, args: &StateArgs) -> Result<(SystemParams, QuantumNumbers), CliError> {
    let base = config.params;
    let params = SystemParams {
        m: args.m.unwrap_or(base.m),
        beta: args.beta.unwrap_or(base.beta),
        r0: args.r0.unwrap_or(base.r0),
        lz: args.lz.unwrap_or(base.lz),
    };
    params.validate().map_err(flag_error)?;
    let qn = QuantumNumbers::new(args.n, args.l, args.k.unwrap_or(config.k)).map_err(flag_error)?;
    Ok((params, qn))
}

fn flag_error(e: Error) -> CliError {
    match e.root() {
        Error::InvalidParameter { name, reason } => CliError::Usage(format!("--{name}: {reason}")),
        _ => e.into(),
    }
}

pub fn cmd_state(config: &RunConfig, args: &StateArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let (params, qn) = state_inputs(config, args)?;
    let report = report_with(&params, &qn, &config.tolerances)?;
    match format {
        Format::Json => output::write_json(out, &report)?,
        Format::Csv => output::write_table_csv(out, &[Ok(report)], None)?,
    }
    Ok(0)
}

/// One sweep row: `(n, l, k, beta)` and its outcome.
pub type SweepRow = (QuantumNumbers, f64, Result<EntropyReport, CliError>);

/// Compute every `(state, beta)` pair of the configuration in grid order.
pub fn sweep(config: &RunConfig, betas: &[f64]) -> Vec<SweepRow> {
    let jobs: Vec<(QuantumNumbers, f64)> = config
        .grid
        .iter()
        .flat_map(|&qn| betas.iter().map(move |&b| (qn, b)))
        .collect();
    jobs.into_par_iter()
        .map(|(qn, beta)| {
            let params = SystemParams { beta, ..config.params };
            let result = report_with(&params, &qn, &config.tolerances).map_err(CliError::from);
            (qn, beta, result)
        })
        .collect()
}

pub fn cmd_table(config: &RunConfig, args: &TableArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let betas = args.betas.clone().unwrap_or_else(|| config.betas.clone());
    let mut filtered = config.clone();
    filtered.betas = betas.clone();
    filtered.validate()?;
    let rows = sweep(&filtered, &betas);
    let failed = rows.iter().any(|(_, _, r)| r.is_err());
    for (qn, beta, r) in &rows {
        if let Err(e) = r {
            eprintln!("error: n={} l={} beta={}: {}", qn.n, qn.l, beta, e.message());
        }
    }
    let reference = args.compare_reference.then_some(&reference::TABLE[..]);
    match format {
        Format::Csv => output::write_sweep_csv(out, &rows, reference)?,
        Format::Json => output::write_sweep_json(out, &rows)?,
    }
    Ok(if failed { 3 } else { 0 })
}

pub fn cmd_density(config: &RunConfig, args: &DensityArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.samples < 2 {
        return Err(CliError::Usage(format!("--samples: need at least 2, got {}", args.samples)));
    }
    let (params, qn) = state_inputs(config, &args.state)?;
    let state = eigen::solve(&params, &qn)?;
    let points: Vec<(f64, f64)> = match args.space {
        Space::Position => {
            let r0 = params.r0;
            let last = args.samples - 1;
            (0..args.samples)
                .map(|i| {
                    let r = if i == last { r0 } else { r0 * i as f64 / last as f64 };
                    (r, state.position_density(r))
                })
                .collect()
        }
        Space::Momentum => {
            let options = abentropy::momentum::ProfileOptions {
                samples: args.samples,
                ..config.tolerances.profile_options()
            };
            let profile = build_profile_with(&state, &options)?;
            profile.samples().iter().map(|s| (s.p, s.density)).collect()
        }
    };
    match format {
        Format::Csv => output::write_density_csv(out, &points)?,
        Format::Json => output::write_density_json(out, &points)?,
    }
    Ok(0)
}
