use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "gnpforge",
    version,
    about = "First vertex of generic Newton polygons of L-functions of exponential sums"
)]
pub struct Cli {
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for cached reports.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// JSON configuration file; flags take precedence.
    #[arg(long, global = true, env = "GNPFORGE_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Minimal digit weights s(n) and the p-density.
    Density {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        /// Largest length in the table (default d0 - 1).
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Minimal witnesses of one length, or the minimal irreducible orbits.
    Minimal {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[arg(long)]
        length: Option<u32>,
    },
    /// Predicted first vertex and Hasse polynomial.
    Predict {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
    },
    /// L-polynomial and Newton polygon of one polynomial by exhaustive sums.
    Oracle {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Terms "d:c,..."; extension coefficients as "c0.c1...".
        #[arg(long)]
        poly: String,
    },
    /// Prediction against the oracle over a coefficient space.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "samples"])))]
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        /// Sampling seed (default: the config seed).
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
    },
    /// Supersingular polynomials of degree p^n - 1 or 2p^n - 2.
    ScanSs {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d0: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// pi-adic congruences on minors of the Dwork matrix.
    DworkCheck {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        precision: Option<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Density { .. } => "density",
            Command::Minimal { .. } => "minimal",
            Command::Predict { .. } => "predict",
            Command::Oracle { .. } => "oracle",
            Command::Verify { .. } => "verify",
            Command::ScanSs { .. } => "scan-ss",
            Command::DworkCheck { .. } => "dwork-check",
        }
    }
}
