//! `iwk`: JSON in, JSON out. Exit status 0 when the computation succeeds or
//! the check passes, 1 when a check fails, 2 on invalid input.

mod commands;
mod output;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{emit, Failure};

#[derive(Debug, Parser)]
#[command(name = "iwk", version, about = "Finite-level Iwasawa algebra computations")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    /// The prime p.
    #[arg(long = "p", global = true, env = "IWK_P", default_value_t = 5)]
    pub p: u64,
    /// p-adic precision N (elements are known modulo p^N).
    #[arg(long, global = true, env = "IWK_PRECISION", default_value_t = 20)]
    pub precision: u32,
    /// Series window D (terms up to T^D).
    #[arg(long, global = true, env = "IWK_TRUNCATION", default_value_t = 32)]
    pub truncation: usize,
    /// Coefficient backend; each subcommand has its own default.
    #[arg(long, global = true, env = "IWK_BACKEND")]
    pub backend: Option<BackendArg>,
    /// Seed for randomized suites.
    #[arg(long, global = true, env = "IWK_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "IWK_FORMAT", default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Padic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weierstrass preparation of a series (p-adic backend).
    Weierstrass { input: PathBuf },
    /// Membership of a crossed-product element in S and S*.
    OreTest { input: PathBuf },
    /// Randomized check that S is multiplicatively closed.
    OreClosureProp {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Canonical form of the Akashi series of a torsion module.
    Akashi { input: PathBuf },
    /// Euler characteristic from the Akashi series.
    EulerChar { input: PathBuf },
    /// The three computations of a twisted Euler characteristic.
    #[command(name = "verify-theorem-3-6")]
    VerifyTheorem36 { input: PathBuf },
    /// Orders of characters of Gamma at which twisting is bad.
    TwistScan {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Arithmetic Euler characteristic formula.
    ChiArith { input: PathBuf },
    /// Checks the Artin decomposition identity.
    ArtinCheck { input: PathBuf },
    /// Solves the Artin decomposition identity for its one unknown.
    ArtinSolve { input: PathBuf },
    /// Valuation of the interpolated L-value.
    Interpolate { input: PathBuf },
    /// Compares a claimed Euler characteristic with the interpolation formula.
    CheckMainConjecture {
        input: PathBuf,
        /// Exponent of p, or "not-finite".
        #[arg(long)]
        chi_claim: String,
    },
    /// Runs every shipped example check.
    PaperSuite {
        #[arg(long, default_value = "fixtures/x1_11_p5")]
        fixtures: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.config.format;
    let result = commands::run(&cli.command, &cli.config);
    match result {
        Ok(report) => {
            emit(&report.value, format);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(value)) => {
            emit(&value, format);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("iwk: {e:#}");
            ExitCode::from(2)
        }
    }
}
