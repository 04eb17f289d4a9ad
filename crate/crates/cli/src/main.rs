mod commands;
mod fanfile;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "ratcurves", version, about = "Counts of rational curves on toric varieties over finite fields")]
struct Cli {
    /// Print a JSON array of row objects instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for brute-force searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// JSON fan file with fields name, rays, max_cones.
    #[arg(long, conflicts_with = "catalog")]
    pub fan: Option<PathBuf>,
    /// Catalog name: P1, P2, P3, P1xP1, BlP2, Fa(a) or F<a>, dP6.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a fan file against every fan invariant.
    Validate {
        path: Option<PathBuf>,
        #[command(flatten)]
        target: Target,
    },
    /// Count morphisms P1 -> U of a given multidegree over F_q.
    Count {
        #[command(flatten)]
        target: Target,
        /// Full vector in Z^I, or coordinates on the Picard basis divisors.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long)]
        q: u64,
        /// Also compute the class in L and check its specialization.
        #[arg(long)]
        motivic: bool,
    },
    /// Degree zeta function by height, with the main term and control statistic.
    Zeta {
        #[command(flatten)]
        target: Target,
        /// Height class in Picard coordinates; defaults to the anticanonical class.
        #[arg(long, allow_hyphen_values = true)]
        bundle: Option<String>,
        #[arg(long, required_unless_present = "motivic")]
        q: Option<u64>,
        #[arg(long)]
        motivic: bool,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        max_height: i64,
        /// Lowest known exponent of L for non-terminating motivic constants.
        #[arg(long, default_value_t = -12, allow_hyphen_values = true)]
        precision: i64,
        /// Truncation of the Möbius series for non-terminating constants.
        #[arg(long, default_value_t = 12)]
        max_total_degree: u32,
    },
    /// Run a verification suite; exits nonzero on any failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest anticanonical height for oracle comparisons.
        #[arg(long, default_value_t = 3)]
        max_height: i64,
        /// Truncation for series comparisons.
        #[arg(long, default_value_t = 6)]
        max_total_degree: u32,
    },
    /// Morphism counts for P2 blown up at three collinear points.
    Cox3 {
        /// Degree (d0,d1,d2,d3) on the basis D0..D3.
        #[arg(long)]
        degree: String,
        #[arg(long)]
        q: u64,
        /// Interpolate the counting polynomial over eight primes.
        #[arg(long)]
        motivic: bool,
    },
    /// List catalog varieties, or print one as a fan file.
    Catalog { name: Option<String> },
    /// Coefficients of the Möbius series up to a total degree.
    Mu {
        #[command(flatten)]
        target: Target,
        #[arg(long, required_unless_present = "motivic")]
        q: Option<u64>,
        #[arg(long)]
        motivic: bool,
        #[arg(long, default_value_t = 6)]
        max_total_degree: u32,
    },
}

/// A command outcome that maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check failed or the computation was refused: exit 1.
    Check(String),
}

impl From<ratcurves::Error> for Failure {
    fn from(e: ratcurves::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json = cli.json;
    let result = match cli.cmd {
        Cmd::Validate { path, target } => commands::validate(path, &target, json),
        Cmd::Count { target, degree, q, motivic } => commands::count(&target, &degree, q, motivic, json),
        Cmd::Zeta { target, bundle, q, motivic, max_height, precision, max_total_degree } => {
            let opts = commands::ZetaOptions { q, motivic, max_height, precision, max_total_degree };
            commands::zeta(&target, bundle.as_deref(), &opts, json)
        }
        Cmd::Verify { suite, max_height, max_total_degree } => {
            verify::run(suite, &verify::Limits { max_height, max_total_degree }, json)
        }
        Cmd::Cox3 { degree, q, motivic } => commands::cox3(&degree, q, motivic, json),
        Cmd::Catalog { name } => commands::catalog(name.as_deref(), json),
        Cmd::Mu { target, q, motivic, max_total_degree } => commands::mu(&target, q, motivic, max_total_degree, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
