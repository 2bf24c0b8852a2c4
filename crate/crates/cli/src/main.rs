//! `kummer`: verification and counting workflows over the fibration catalog.
//!
//! Exit codes: 0 when every requested check passes, 1 when any check fails,
//! 2 on usage errors. All machine output is deterministic for a fixed
//! configuration and seed; timing columns are opt-in because they are not.

mod output;
mod parallel;
mod run;

use clap::{Parser, Subcommand, ValueEnum};

/// Parsed run configuration; every subcommand shares the output conventions.
#[derive(Parser, Debug)]
#[command(name = "kummer", version, about = "Kummer-sandwich fibration toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the closed-form point count against the character-sum oracle.
    Count {
        /// Primes: a range "3..101" (inclusive) or a comma list "3,5,7".
        #[arg(long, default_value = "3..101")]
        primes: String,
        /// Fixed moduli triple "a,b,c" (rationals); random triples if absent.
        #[arg(long)]
        moduli: Option<String>,
        /// Number of random triples per prime when --moduli is absent.
        #[arg(long, default_value_t = 20)]
        triples: u32,
        /// Seed for the random triples (required when --moduli is absent).
        #[arg(long)]
        seed: Option<u64>,
        /// Also run the NTT kernel and include it in the agreement check.
        #[arg(long)]
        ntt: bool,
        /// Include per-kernel timing columns (breaks byte-reproducibility).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output path; stdout if absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Verify every catalog map, composite chain, and involution identity
    /// on sampled points.
    VerifyMaps {
        #[arg(long, default_value_t = 2_147_483_647)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        /// Rank-18 moduli λ₁, λ₂.
        #[arg(long, default_value = "2")]
        lambda1: String,
        #[arg(long, default_value = "3")]
        lambda2: String,
        /// Rosenhain roots (square product) feeding the rank-17 moduli.
        #[arg(long, default_value = "2,3,6")]
        rosenhain: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Singular-fiber census of a catalog fibration, diffed against the
    /// embedded expected table.
    Fibers {
        /// Catalog id, e.g. J1, Y_RANK18, MIRROR_G2G3, S_17_A.
        #[arg(long)]
        id: String,
        /// First/second/third parameter as rationals; arity per id.
        #[arg(long)]
        l1: Option<String>,
        #[arg(long)]
        l2: Option<String>,
        #[arg(long)]
        l3: Option<String>,
        /// All parameters at once, comma separated (alternative to --l1..).
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Level-two moduli, Richelot transform, quartic parameters, twist
    /// factor and their exact identities from a Rosenhain triple.
    Isogeny {
        /// Rosenhain roots "λ1,λ2,λ3" as rationals.
        #[arg(long)]
        rosenhain: String,
        /// Branch of l = ±√(λ1λ2λ3).
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// The counting-relation checks across a prime range.
    Relations {
        #[arg(long, default_value = "2,3,6")]
        rosenhain: String,
        #[arg(long, default_value = "3..50")]
        primes: String,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Genus-two Jacobian orders over F_p with Weil-bound checks.
    Jacobian {
        #[arg(long)]
        p: u64,
        /// Sextic coefficients "c0,c1,...,c6" ascending; random if absent.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// Number of random squarefree curves to draw.
        #[arg(long, default_value_t = 1)]
        random: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Hypergeometric period identities at the given λ values.
    Periods {
        #[arg(long, default_value = "2,5/2,3,10")]
        lambdas: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Timing table for the counting kernels (output is not reproducible).
    Bench {
        #[arg(long, default_value = "101,211,401")]
        primes: String,
        #[arg(long)]
        ntt: bool,
        #[arg(long, default_value_t = 0xbe5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run::run(cli.command) {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
