use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lampwalk_cli::commands::{metric, simulate, strip, verify};
use lampwalk_cli::config::{Experiment, Overrides};
use lampwalk_cli::error::{CliError, CliResult};
use lampwalk_cli::record::{Header, RecordWriter};
use lampwalk_cli::THREADS_ENV;

#[derive(Parser)]
#[command(name = "lampwalk", version, about = "Lamplighter random walks over free groups and lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch of walks and estimate speed, limit points and harmonic measure.
    Simulate(Common),
    /// Distance from the identity to (lamps, pos).
    Metric(Common),
    /// Strip growth curve as CSV plus an equivariance fuzz report.
    Strip {
        #[command(flatten)]
        common: Common,
        /// Where the equivariance record goes; standard error by default.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the invariant suite; exits 3 on any failure.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// TOML file with experiment fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output by default.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

impl Common {
    fn experiment(&self) -> CliResult<Experiment> {
        let base = match &self.config {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        Experiment::resolve(base.overlay(self.overrides.clone()))
    }
}

fn open(path: &Option<PathBuf>, fallback: impl FnOnce() -> Box<dyn Write>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => fallback(),
    })
}

fn stdout() -> Box<dyn Write> {
    Box::new(BufWriter::new(io::stdout().lock()))
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Invalid(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invalid(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    let (common, report) = match &cli.command {
        Command::Simulate(c) | Command::Metric(c) | Command::Verify(c) => (c, None),
        Command::Strip { common, report } => (common, Some(report)),
    };
    let exp = common.experiment()?;
    let header = Header { config_hash: exp.config_hash(), seed: exp.seed };
    let mut out = open(&common.output, stdout)?;
    let result = match &cli.command {
        Command::Simulate(_) => simulate::run(&exp, &header, &mut RecordWriter::new(&mut out)),
        Command::Metric(_) => metric::run(&exp, &header, &mut RecordWriter::new(&mut out)),
        Command::Verify(_) => verify::run(&exp, &header, &mut RecordWriter::new(&mut out)),
        Command::Strip { .. } => {
            let sink = open(report.expect("strip has a report path"), || Box::new(io::stderr()))?;
            let mut records = RecordWriter::new(sink);
            let r = strip::run(&exp, &header, &mut out, &mut records);
            records.finish()?;
            r
        }
    };
    // records already written stay on disk even when the run fails
    out.flush()?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lampwalk: {e}");
            e.exit_code()
        }
    }
}
