mod args;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dyndeg_core::algebra::Rational;
use num_bigint::BigInt;
use std::ops::RangeInclusive;

/// Certified dynamical degrees of the maps f_A on ℙ³.
///
/// Exit status: 0 success or PASS, 1 certified FAIL, 2 unknown or
/// undecidable, 3 input error.
#[derive(Debug, Parser)]
#[command(name = "dyndeg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Target width of enclosures, e.g. 1e-6 or 1/1000000.
    #[arg(long, global = true, default_value = "1/1000000", value_parser = args::positive_rational)]
    pub eps: Rational,

    /// Moduli scanned by the mod-m certificates.
    #[arg(long, global = true, default_value = "5..1999", value_parser = args::moduli)]
    pub moduli: RangeInclusive<u64>,

    /// Maximum number of steps spent on one modulus (at least 1000).
    #[arg(long, global = true, default_value = "1e7", value_parser = args::step_cap)]
    pub step_cap: u64,

    /// Lower bound for the lcm of periods; the Baker threshold is used when larger.
    #[arg(long, global = true, value_parser = args::integer)]
    pub baker_target: Option<BigInt>,

    /// Worker threads for the parallel searches.
    #[arg(long, global = true, env = "DYNDEG_JOBS")]
    pub jobs: Option<usize>,

    /// Write the machine-readable result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ψ(Aⁿ), the max of ⟨w, Aⁿv⟩ over the fixed vector sets.
    Psi {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Degrees of h_A, h_A⁻¹ and the degree bounds for f_A, f_A⁻¹.
    Degree { matrix: PathBuf },
    /// Certified enclosure of the first dynamical degree.
    Lambda1 { matrix: PathBuf },
    /// Exact second dynamical degree as an algebraic number.
    Lambda2 { matrix: PathBuf },
    /// The cone condition for A, with per-sequence evidence.
    ConeCheck { matrix: PathBuf },
    /// Hypotheses of the transcendence criterion for λ₁.
    Transcendence { matrix: PathBuf },
    /// All degrees, hyperbolicity verdict and the certificate.
    Report {
        matrix: PathBuf,
        /// Dimensions of product profiles to include, e.g. 4,5.
        #[arg(long = "profile-d", value_delimiter = ',')]
        profile_d: Vec<usize>,
    },
    /// Heights along an orbit prefix of f_A.
    Orbit {
        matrix: PathBuf,
        /// Projective point, e.g. 1,2,3,5.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Independently re-check a certificate written by `report --out`.
    Verify { certificate: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("dyndeg: --jobs must be positive");
            return ExitCode::from(commands::INPUT_ERROR);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("global pool is configured once");
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dyndeg: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
