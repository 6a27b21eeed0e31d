//! `fekete`: command-line front end for the simplex Fekete toolkit.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit statuses shared by every subcommand.
pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "fekete", version, about = "Candidate Fekete and Fejér point sets on the simplex")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Interval precision in bits.
    #[arg(long = "prec-bits", global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(24..=4096))]
    pub prec_bits: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct DegDim {
    /// Interpolation degree n (1 to 5).
    #[arg(short = 'n', long = "degree", value_parser = clap::value_parser!(u32).range(1..=5))]
    pub n: u32,
    /// Simplex dimension d.
    #[arg(short = 'd', long = "dim", value_parser = clap::value_parser!(u64).range(1..=64))]
    pub d: u64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SearchOpts {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random multistart points in addition to face barycentres and the lattice.
    #[arg(long, default_value_t = 200)]
    pub starts: usize,
    /// For n = 5 and d ≥ 3, use w = (9+√5)/38 instead of (9−√5)/38.
    #[arg(long = "w-plus")]
    pub w_plus: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointsKind {
    Fekete,
    Vertices,
    Midpoints,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the candidate set F_n on S_d.
    Points {
        #[command(flatten)]
        dd: DegDim,
        /// Significant digits of decimal coordinates.
        #[arg(long, default_value_t = 17)]
        digits: usize,
    },
    /// Lagrange basis in the homogeneous monomials of degree n.
    Lagrange {
        #[command(flatten)]
        dd: DegDim,
    },
    /// Vandermonde determinant of a point set.
    Vdm {
        #[command(flatten)]
        dd: DegDim,
        #[arg(long, value_enum, default_value_t = PointsKind::Fekete)]
        points: PointsKind,
        /// Also run the exhaustive degree-one search on a grid with this many points per edge (n = 1, d = 2).
        #[arg(long = "brute-grid")]
        brute_grid: Option<u32>,
    },
    /// Degree-elevation certificate for sum l_i^2 <= 1.
    Certify {
        #[command(flatten)]
        dd: DegDim,
        /// Largest elevation exponent tried.
        #[arg(long = "r-max", default_value_t = 14)]
        r_max: u32,
        /// For n = 4, certify the full kernel instead of the partial sum without 3-face centroids.
        #[arg(long = "full-kernel")]
        full_kernel: bool,
        /// Allow interval (non-exact) coefficients; required for n = 5.
        #[arg(long)]
        numeric: bool,
    },
    /// Fejér exponent: the least r with ||l(x)||_r <= 1 on the simplex.
    Exponent {
        #[command(flatten)]
        dd: DegDim,
        #[command(flatten)]
        search: SearchOpts,
        /// Bisection width in r.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Numerical maximum of sum l_i^2 over the simplex.
    Maxk {
        #[command(flatten)]
        dd: DegDim,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Equal-weight G-optimality check.
    DesignCheck {
        #[command(flatten)]
        dd: DegDim,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random rational sample points besides the face barycentres.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Degree-5 parameter derivations and checks.
    SearchDeg5,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("fekete: cannot configure threads: {e}");
        }
    }
    let outcome = match commands::run(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(commands::CliError { message, code }) => {
            eprintln!("fekete: {message}");
            return ExitCode::from(code);
        }
    };
    let body = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n",
        Format::Text => outcome.text,
        Format::Csv => match outcome.csv {
            Some(c) => c,
            None => {
                eprintln!("fekete: csv output is not available for this command");
                return ExitCode::from(EXIT_USAGE);
            }
        },
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("fekete: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.exit)
}
