//! `weylspec`: spectra, lattice counts, divisor identities, geodesic
//! counts and Bessel integrals as CSV.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 bad arguments or config,
//! 3 work budget exceeded, 4 I/O failure.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::CliError;

#[derive(Parser, Debug)]
#[command(name = "weylspec", version, about = "Exact spectral counting on compact Lie groups and related lattice sums")]
struct Cli {
    /// TOML file with one table per subcommand, keys as the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Result cache directory (overrides $WEYLSPEC_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Write the CSV here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Counting function N(λ), leading term and remainder for a group.
    Spectrum(config::SpectrumArgs),
    /// Weighted lattice-point sums in balls.
    Lattice(config::LatticeArgs),
    /// Representation numbers, divisor-sum identities and shell averages.
    Arith(config::ArithArgs),
    /// Closed-geodesic counts on the maximal torus.
    Geodesics(config::GeodesicArgs),
    /// Weighted Bessel integrals and their growth envelope.
    Bessel(config::BesselArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => config::FileConfig::load(p)?,
        None => config::FileConfig::default(),
    };
    let cache = weylspec::io::Cache::from_env(file.cache_dir.clone());
    let cache = cli.cache_dir.clone().map(weylspec::io::Cache::new).or(cache);
    let table = match cli.command {
        Command::Spectrum(a) => commands::spectrum(a.merge(file.spectrum), cache.as_ref())?,
        Command::Lattice(a) => commands::lattice(a.merge(file.lattice), cache.as_ref())?,
        Command::Arith(a) => commands::arith(a.merge(file.arith), cache.as_ref())?,
        Command::Geodesics(a) => commands::geodesics(a.merge(file.geodesics), cache.as_ref())?,
        Command::Bessel(a) => commands::bessel(a.merge(file.bessel), cache.as_ref())?,
    };
    match cli.out {
        Some(p) => table.write_path(&p)?,
        None => table.write_to(std::io::stdout().lock())?,
    }
    Ok(())
}
