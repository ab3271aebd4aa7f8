//! `repwords` command-line interface.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use repwords::ExponentBound;

#[derive(Debug, Parser)]
#[command(name = "repwords", version, about = "Fractional-power-free binary words")]
pub struct Cli {
    /// Wall-clock cap for exhaustive searches, in seconds.
    #[arg(long, global = true, env = "REPWORDS_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a word against an exponent bound and report the first violation
    /// (smallest end index, then smallest period). Exits 1 if the word is not free.
    Check(CheckArgs),
    /// Count bound-free binary words of every length up to --max-n by pruned
    /// depth-first search (overlap-free, 7/3, 7/3+ and cubefree tables).
    Enumerate(EnumerateArgs),
    /// Factor a 7/3-free word as u·μ(y)·v repeatedly, down to a core of
    /// length at most 4 (structure theorem for 2 < α ≤ 7/3).
    Decompose(DecomposeArgs),
    /// Build the 2^r words h(g(x')) of length 21m avoiding 7/3+-powers
    /// from a squarefree ternary word (exponential lower bound).
    Construct(ConstructArgs),
    /// Generate minimal forbidden words, build the avoidance automaton and
    /// estimate its growth rate (upper bound C_n = O(1.23^n) for 7/3+).
    Growth(GrowthArgs),
    /// Run the exhaustive certificates: h-image squares and powers, the two
    /// facts about h, large squares in 7/3-free words, and the length-29 bound.
    Verify(VerifyArgs),
    /// Regenerate the four count rows (overlap-free, 7/3, 7/3+, cubefree) for
    /// n ≤ 28 and compare them against the golden files.
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_bound(s: &str) -> Result<ExponentBound, String> {
    s.parse().map_err(|e: repwords::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Word as a digit string, e.g. 0110110.
    pub word: String,
    /// Exponent bound `<int>[/<int>][+]`; `+` forbids only exponents above α.
    #[arg(long, value_parser = parse_bound)]
    pub bound: ExponentBound,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = parse_bound)]
    pub bound: ExponentBound,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Independent subtrees searched in parallel; counts do not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub shards: u64,
    /// Allow exponentially growing searches beyond length 40.
    #[arg(long)]
    pub force: bool,
    /// Print the free words of length --max-n, one per line, instead of counts.
    #[arg(long)]
    pub list: bool,
    /// Report search progress on stderr.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub word: String,
    /// Closed bound with 2 < α ≤ 7/3.
    #[arg(long, value_parser = parse_bound, default_value = "7/3")]
    pub bound: ExponentBound,
    /// Also list every single-step factorization of the word.
    #[arg(long)]
    pub all_factorizations: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Length of the squarefree ternary source word.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=32))]
    pub m: u64,
    /// Write every member, one per line, to this file.
    #[arg(long)]
    pub emit: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Open bound whose shortest violating powers are forbidden.
    #[arg(long, value_parser = parse_bound, default_value = "7/3+")]
    pub bound: ExponentBound,
    #[arg(long, default_value_t = 10)]
    pub max_period: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Number of exact avoidance counts to report (lengths 0..=N).
    #[arg(long, default_value_t = 30)]
    pub counts: usize,
    /// Write the forbidden list, one word per line, to this file.
    #[arg(long)]
    pub export_forbidden: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifySelection {
    #[arg(long)]
    pub all: bool,
    /// One of h_squares, h_powers, fact_i, fact_ii, large_squares_0,
    /// large_squares_1, dekking.
    #[arg(long)]
    pub check: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub selection: VerifySelection,
    /// Include elapsed times (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Directory holding the golden CSVs; defaults to the copies built into
    /// the binary.
    #[arg(long)]
    pub golden_dir: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.downcast_ref::<repwords::Error>().is_some_and(|e| {
                matches!(
                    e,
                    repwords::Error::BudgetExceeded(_)
                        | repwords::Error::WordParse(_)
                        | repwords::Error::BoundParse { .. }
                        | repwords::Error::SymbolOutOfRange { .. }
                        | repwords::Error::StructureTheoremInapplicable(_)
                        | repwords::Error::ClosedBoundUnsupported(_)
                        | repwords::Error::InvalidArgument(_)
                        | repwords::Error::NotFree { .. }
                )
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
