//! `scissors`: evaluate invariants, run identity suites and write reports.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "scissors", version, about = "Exact valuation algebra of polytopes and cones")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte-Carlo samples for solid angles in dimension 4 and up.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub mc_samples: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest denominator accepted when recognizing rationals in tensors.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_den: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a named invariant.
    Invariant {
        #[command(subcommand)]
        action: InvariantCmd,
    },
    /// Randomized identity suites.
    Identities {
        #[command(subcommand)]
        action: IdentitiesCmd,
    },
    /// Compare χ̃(j) of two polytopes modulo rational first slots.
    Dehn {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Compare as given, without rescaling `b` to the volume of `a`.
        #[arg(long)]
        no_normalize: bool,
    },
    /// δ-homology of a simplicial complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// The rings E and L.
    Rings {
        #[command(subcommand)]
        action: RingsCmd,
    },
    /// Frame invariant of a polytope, directly and by transport.
    Frame {
        #[arg(long)]
        input: PathBuf,
        /// Orthonormal rows, e.g. "1,0;0,1" or "3/5,4/5".
        #[arg(long)]
        frame: String,
    },
    /// Run suites and write report.json, summary.csv and acceptance.json.
    Report {
        #[arg(long, default_value = "report")]
        out: PathBuf,
        #[arg(long = "suite", default_value = "all")]
        suites: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantCmd {
    Eval {
        /// chi, vol, eps, e, U, W, intrinsic, conical_intrinsic, S^{..},
        /// T^{..}, dehn_S, dehn_T, K, L^U, frame_f_U
        #[arg(long)]
        name: String,
        #[arg(long)]
        input: PathBuf,
        /// Expected ambient dimension of the input.
        #[arg(long)]
        dim: Option<usize>,
        /// Frame rows for L^U and frame_f_U.
        #[arg(long)]
        frame: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum IdentitiesCmd {
    Run {
        /// Suite name or alias (all, star, rings); repeatable.
        #[arg(long = "suite", required = true)]
        suites: Vec<String>,
        /// Dimension range `a..b` (inclusive).
        #[arg(long)]
        dims: Option<String>,
        /// Random cases per dimension.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// List suite names.
    List,
}

#[derive(Subcommand, Debug)]
enum RingsCmd {
    /// The invariant, involution, relation and δ tables, and E₂ round trips.
    Tables,
    /// Probes, membership and δ of an expression such as "d*d'" or "p^2".
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        degree: usize,
    },
    Compare {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.run.clone();
    let result = match cli.command {
        Command::Invariant { action: InvariantCmd::Eval { name, input, dim, frame } } => {
            commands::invariant_eval(&cfg, &name, &input, dim, frame.as_deref())
        }
        Command::Identities { action: IdentitiesCmd::Run { suites, dims, cases } } => {
            commands::identities(&cfg, &suites, dims.as_deref(), cases)
        }
        Command::Identities { action: IdentitiesCmd::List } => Ok(commands::list_suites()),
        Command::Dehn { a, b, j, no_normalize } => commands::dehn(&cfg, &a, &b, j, !no_normalize),
        Command::Homology { input, max_n } => commands::homology(&input, max_n),
        Command::Rings { action: RingsCmd::Tables } => commands::identities(&cfg, &["rings".into()], None, None),
        Command::Rings { action: RingsCmd::Eval { expr, degree } } => commands::rings_eval(&cfg, &expr, degree),
        Command::Rings { action: RingsCmd::Compare { lhs, rhs, degree } } => {
            commands::rings_compare(&cfg, &lhs, &rhs, degree)
        }
        Command::Frame { input, frame } => commands::frame(&cfg, &input, &frame),
        Command::Report { out, suites } => commands::report(&cfg, &out, &suites),
    };
    match result.and_then(|o| o.emit(&cfg).map(|()| o.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
