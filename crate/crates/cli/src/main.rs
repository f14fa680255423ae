//! `goldbach`: average-Goldbach and explicit-formula numerics at desk scale.
//!
//! Exit codes: 0 success, 1 usage, 2 data/I-O, 3 verification failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{OutputFormat, RunConfig};

#[derive(Debug)]
pub enum CmdError {
    /// Bad invocation beyond what clap catches (exit 1).
    Usage(String),
    /// Missing/invalid data or I/O (exit 2).
    Data(String),
    /// A --verify assertion failed (exit 3).
    Verify(String),
}

#[derive(Parser)]
#[command(
    name = "goldbach",
    version,
    about = "Average Goldbach representations, zeta-zero sums, and prime variance numerics"
)]
struct Cli {
    /// Flat key = value config file with [grids] and [tolerances] sections.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Λ-table size floor (sieve target; commands grow it as needed).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,
    /// Hard cap on the Λ-table size.
    #[arg(long, global = true)]
    hard_cap: Option<u64>,
    /// Zero table (ASCII, one ordinate per line, '#' comments).
    #[arg(long, global = true)]
    zero_file: Option<PathBuf>,
    /// Load the Λ table from this binary cache instead of sieving.
    #[arg(long, global = true)]
    lambda_cache: Option<PathBuf>,
    /// Write <command>.csv/.json here instead of stdout.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sieve Λ up to n-max; optionally cache (--out) or revalidate (--check).
    Sieve {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Identity breakdown rows over an N grid.
    Fujii {
        #[arg(long, value_delimiter = ',')]
        n_grid: Vec<u64>,
        /// Zero-sum truncation height (default: top of the zero table).
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        verify: bool,
    },
    /// Exact variance curves H, J, 𝒥 and the Saffari-Vaughan inequality.
    Variance {
        #[arg(long, value_enum)]
        kind: commands::variance::KindArg,
        #[arg(long, value_delimiter = ',')]
        x_grid: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        h_grid: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        delta_grid: Vec<f64>,
        #[arg(long)]
        verify: bool,
    },
    /// Montgomery F(x,T) rows.
    Paircorr {
        #[arg(long, value_enum, default_value = "powers")]
        x_mode: commands::paircorr::XMode,
        /// Exponents p for x = T^p in powers mode.
        #[arg(long, value_delimiter = ',')]
        x_powers: Vec<f64>,
        /// Extra explicit x values.
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        window: Option<f64>,
        /// Exact O(M²) pair sum instead of the windowed sum.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        exact_cap: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// ℰ(N) majorant rows with the exact E(N) and the ψ(N)−N check.
    Bounds {
        #[arg(long, value_delimiter = ',')]
        n_grid: Vec<u64>,
        #[arg(long)]
        verify: bool,
    },
    /// Odd/even split of the ψ₂ average against 2N log N.
    OddEven {
        #[arg(long, value_delimiter = ',')]
        n_grid: Vec<u64>,
        #[arg(long)]
        verify: bool,
    },
    /// Download a zero table and verify its SHA-256.
    FetchZeros {
        #[arg(long)]
        url: Option<String>,
        #[arg(long)]
        sha256: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let benign = matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let _ = e.print();
            return if benign { 0 } else { 1 };
        }
    };

    let mut cfg = match cli.config.as_deref().map(RunConfig::load).transpose() {
        Ok(cfg) => cfg.unwrap_or_default(),
        Err(e) => return report(e),
    };
    if let Some(n) = cli.n_max {
        cfg.n_max = Some(n as usize);
    }
    if let Some(cap) = cli.hard_cap {
        cfg.hard_cap = cap as usize;
    }
    if let Some(p) = cli.zero_file {
        cfg.zero_file = Some(p);
    }
    if let Some(p) = cli.lambda_cache {
        cfg.lambda_cache = Some(p);
    }
    if let Some(p) = cli.output_dir {
        cfg.output_dir = Some(p);
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }

    let result = match cli.command {
        Command::Sieve { out, check } => commands::sieve::run(&cfg, out, check),
        Command::Fujii {
            n_grid,
            height,
            verify,
        } => commands::fujii::run(&cfg, n_grid, height, verify),
        Command::Variance {
            kind,
            x_grid,
            h_grid,
            delta_grid,
            verify,
        } => commands::variance::run(&cfg, kind, x_grid, h_grid, delta_grid, verify),
        Command::Paircorr {
            x_mode,
            x_powers,
            x,
            height,
            window,
            exact,
            exact_cap,
            verify,
        } => commands::paircorr::run(
            &cfg, x_mode, x_powers, x, height, window, exact, exact_cap, verify,
        ),
        Command::Bounds { n_grid, verify } => commands::bounds::run(&cfg, n_grid, verify),
        Command::OddEven { n_grid, verify } => commands::odd_even::run(&cfg, n_grid, verify),
        Command::FetchZeros { url, sha256, out } => commands::fetch::run(&cfg, url, sha256, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => report(e),
    }
}

fn report(e: CmdError) -> i32 {
    match e {
        CmdError::Usage(msg) => {
            eprintln!("usage error: {msg}");
            1
        }
        CmdError::Data(msg) => {
            eprintln!("error: {msg}");
            2
        }
        CmdError::Verify(msg) => {
            eprintln!("verification failure: {msg}");
            3
        }
    }
}
