//! Command-line front end for `projheight`.
//!
//! Exit codes: 0 success, 2 invalid input, 3 enumeration budget or exact-solver
//! cap exceeded, 4 a checked assertion failed.

pub mod commands;
pub mod record;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use projheight::digraph::DEFAULT_EXACT_CAP;
use projheight::heights::DEFAULT_BUDGET;

use commands::{CayleyFlags, CliError, CmdResult, EXIT_INPUT, EXIT_VIOLATION, TABLE_PRIMES};
use record::Format;

/// Environment variable overriding the exact-β vertex cap.
pub const EXACT_CAP_VAR: &str = "PROJHEIGHT_EXACT_CAP";

#[derive(Debug, Parser)]
#[command(name = "projheight", version, about = "Heights on P^(d-1)(F_p) and feedback arc sets of Cayley digraphs")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Height of a single projective point
    Height {
        #[arg(short = 'p')]
        p: u64,
        /// Coordinates, comma separated
        #[arg(short = 'a', value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coords: Vec<i64>,
    },
    /// Line heights h_p(<1,a>) for a in [2, p-2]
    Table {
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        #[arg(long, required_unless_present = "paper_range")]
        pmax: Option<u64>,
        /// The primes 11, 13, 17, 19, 23, 29
        #[arg(long, conflicts_with_all = ["pmax"])]
        paper_range: bool,
    },
    /// Height spectrum of P^(d-1)(F_p)
    Spectrum {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'd', long = "d", default_value_t = 2)]
        d: usize,
        /// Check the maximum height against its known bounds
        #[arg(long)]
        check_bounds: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Scan line spectra for heights inside (p/(r+1) + c, p/r - c)
    Gaps {
        /// A single prime
        #[arg(short = 'p', conflicts_with_all = ["pmin", "pmax"])]
        p: Option<u64>,
        #[arg(long)]
        pmin: Option<u64>,
        #[arg(long, required_unless_present = "p")]
        pmax: Option<u64>,
        #[arg(long = "r", default_value_t = 1)]
        r: u64,
        /// Nonnegative rational, e.g. 1/2 or 0.5
        #[arg(long = "c", default_value = "0", value_parser = commands::parse_rational)]
        c: num_rational::Ratio<i64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Feedback arc set bounds for the Cayley digraph (F_p, E_A)
    Cayley {
        #[arg(short = 'p')]
        p: u64,
        /// Connection set, comma separated
        #[arg(short = 'A', value_delimiter = ',', allow_hyphen_values = true, required = true)]
        set: Vec<i64>,
        /// Compute the exact minimum feedback arc set
        #[arg(long)]
        exact: bool,
        /// Check the CSS inequality and related bounds
        #[arg(long)]
        css: bool,
        /// Report the shortest directed cycle
        #[arg(long)]
        girth: bool,
    },
    /// Audit every connection set of size d, up to scaling, for primes <= pmax
    Scan {
        #[arg(long)]
        pmax: u64,
        #[arg(short = 'd', long = "d")]
        d: usize,
        #[arg(long)]
        exact: bool,
        /// Write the full report here; stdout then carries the summary only
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads the exact-solver cap from the environment, defaulting to 24.
pub fn exact_cap_from_env() -> Result<usize, String> {
    match std::env::var(EXACT_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{EXACT_CAP_VAR} must be a nonnegative integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_EXACT_CAP),
    }
}

pub fn run(cli: Cli, exact_cap: usize) -> RunOutput {
    let mut out_path = None;
    let result: CmdResult = match cli.command {
        Command::Height { p, coords } => commands::height_cmd(p, &coords),
        Command::Table { pmin, pmax, paper_range } => {
            let primes = if paper_range {
                TABLE_PRIMES.to_vec()
            } else {
                commands::table_range(pmin, pmax.unwrap_or(pmin))
            };
            commands::table_cmd(&primes)
        }
        Command::Spectrum { p, d, check_bounds, budget } => commands::spectrum_cmd(p, d, check_bounds, budget),
        Command::Gaps { p, pmin, pmax, r, c, budget } => {
            let primes = match p {
                Some(p) => vec![p],
                None => projheight::modular::odd_primes(pmin.unwrap_or(3), pmax.unwrap_or(0)),
            };
            commands::gaps_cmd(&primes, r, c, budget)
        }
        Command::Cayley { p, set, exact, css, girth } => {
            commands::cayley_cmd(p, &set, CayleyFlags { exact, css, girth }, exact_cap)
        }
        Command::Scan { pmax, d, exact, out, budget } => {
            out_path = out;
            commands::scan_cmd(pmax, d, exact, exact_cap, budget)
        }
    };

    match result {
        Err(e) => RunOutput { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
        Ok(outcome) => {
            let mut stderr = String::new();
            let mut stdout = outcome.record.render(cli.format);
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, &stdout) {
                    let err = CliError::Input(format!("cannot write {}: {e}", path.display()));
                    return RunOutput { stdout: String::new(), stderr: format!("error: {err}\n"), code: EXIT_INPUT };
                }
                let mut summary = outcome.record.clone();
                summary.rows.clear();
                summary.columns.clear();
                stdout = summary.render(cli.format);
            }
            let code = if outcome.violations > 0 {
                stderr.push_str(&format!("{} assertion(s) failed\n", outcome.violations));
                EXIT_VIOLATION
            } else {
                0
            };
            RunOutput { stdout, stderr, code }
        }
    }
}
