//! `ca1`: divisorial contractions to `xy + z² + w^N` from the command line.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use ca1_core::blowup::WeightVec4;
use ca1_core::filtration::WPoly;
use ca1_core::rr::Basket;
use ca1_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

/// Exit status for bad input: usage errors, out-of-domain values, parse failures.
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "ca1", version, about = "Divisorial contractions to cA1 points")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Baskets and discrepancies with Σ v_Q = 3 - d.
    Baskets {
        #[arg(long)]
        d: i64,
        #[arg(long = "r-bound", default_value_t = ca1_core::baskets::DEFAULT_R_BOUND)]
        r_bound: i64,
    },
    /// a·E³ for every basket with Σ v_Q = 3.
    ProofTable,
    /// The classified weighted blow-ups for one N.
    Contractions {
        #[arg(long = "N")]
        n: u32,
    },
    /// Analyse one weighted blow-up and cross-check it.
    Verify {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        weights: WeightVec4,
        #[arg(long = "cert-bound", default_value_t = ca1_core::blowup::DEFAULT_CERT_BOUND)]
        cert_bound: i64,
        /// Picks the prime for the F_p singular-point guard.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// dim O/f_*O(-iE) for i = 1..=a.
    RrDims {
        #[arg(long)]
        a: i64,
        /// `r:v,...` or `r:v:b,...`.
        #[arg(long, allow_hyphen_values = true)]
        basket: Basket,
    },
    /// Pull-back coefficients on a partially resolved A_s chain.
    Duval {
        #[arg(long)]
        s: usize,
        /// Bit j-1 set means curve F_j is contracted.
        #[arg(long)]
        contracted: u64,
    },
    /// A_s type of the special surface for a given p(w).
    SpecialSurface {
        #[arg(long)]
        a: i64,
        /// Coefficients of p, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        p: WPoly,
        #[arg(long = "N")]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => render::json(&report) + "\n",
                Format::Table => render::table(&report),
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
                _ => 2,
            })
        }
    }
}
