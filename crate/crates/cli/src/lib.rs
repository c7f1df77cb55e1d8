//! Command-line front end for `permpat`.
//!
//! [`run`] parses an argument vector, writes the result to `out` and returns
//! the process exit code: 0 on success, 1 on a runtime error, 2 on a usage
//! error and 3 when a `check` finds a violation.

mod commands;
mod output;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use permpat::Perm;

pub use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] permpat::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("json encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// Reads a pattern: digits (`1324`), comma-separated values, or `-`/`empty`
/// for the empty permutation.
pub fn parse_perm(s: &str) -> Result<Perm, String> {
    match s.trim() {
        "" | "-" | "empty" => Ok(Perm::empty()),
        t => t.parse().map_err(|e: permpat::Error| e.to_string()),
    }
}

fn parse_window(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(w) if w >= 2 => Ok(w),
        _ => Err("window must be an integer >= 2".into()),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "permpat",
    version,
    about = "Count pattern-avoiding permutations by inversions and evaluate the related bounds",
    after_help = "Patterns are written as digit strings (1324), comma-separated values \
                  (1,3,2,4) or '-' for the empty pattern.\n\
                  Tables default to CSV with header n,k,count; reports default to JSON \
                  carrying \"schema\": 1."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of avoiders of length n.
    Count {
        #[arg(long, value_parser = parse_perm)]
        pattern: Perm,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Avoiders counted by length and number of inversions.
    Triangle(TriangleArgs),
    /// Red-blue coloring of a permutation for the triple (sigma, tau, rho).
    Color(ColorArgs),
    /// Growth-rate bound calculators.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Partition bijections for 132- and 1324-avoiders with few inversions.
    #[command(subcommand)]
    Biject(BijectCommand),
    /// Exhaustive checks; exit code 3 when a violation is found.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Fit a polynomial to an inversion column and compare with the prediction.
    Poly(PolyArgs),
    /// Number of permutations of length n with k inversions.
    Mahonian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Args, Debug)]
struct TriangleArgs {
    #[arg(long, value_parser = parse_perm)]
    pattern: Perm,
    #[arg(long = "nmax")]
    n_max: usize,
    /// Only columns k <= max-k (prunes the search).
    #[arg(long = "max-k")]
    max_k: Option<usize>,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Depth at which the search tree is split into parallel tasks.
    #[arg(long = "split-depth", default_value_t = 4)]
    split_depth: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
struct TripleArgs {
    #[arg(long, value_parser = parse_perm, default_value = "1")]
    sigma: Perm,
    #[arg(long, value_parser = parse_perm, default_value = "1")]
    tau: Perm,
    #[arg(long, value_parser = parse_perm, default_value = "1")]
    rho: Perm,
}

#[derive(Args, Debug)]
struct ColorArgs {
    #[command(flatten)]
    triple: TripleArgs,
    #[arg(long, value_parser = parse_perm)]
    perm: Perm,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum BoundCommand {
    /// Closed-form bound for the layered pattern with the given layer sizes.
    Layered {
        #[arg(required = true)]
        layers: Vec<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The same bound built up by merging one layer at a time.
    Recursive {
        #[arg(required = true)]
        layers: Vec<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// (sqrt(alpha) + sqrt(beta))^2
    Merge {
        alpha: f64,
        beta: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// e^(pi sqrt(2/3))
    Rho {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Bound on s_n(1324) assuming monotone inversion columns.
    Conditional {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Bound on s_n(132) from counting by inversions.
    S132 {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// (k+1) rho^sqrt(2k) against the exact number of partition pairs.
    Q {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// rho^sqrt(k) against the exact partition number.
    Partition {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Whether every layered pattern of the given length has bound at most 4 total^2.
    LayeredCorollary {
        #[arg(long)]
        total: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand, Debug)]
enum BijectCommand {
    /// 132-avoiders with k < n inversions and partitions of k.
    #[command(name = "132")]
    B132 {
        #[arg(long, value_parser = parse_perm, conflicts_with_all = ["partition", "n"])]
        perm: Option<Perm>,
        #[arg(long, requires = "n")]
        partition: Option<permpat::partition::Partition>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// 1324-avoiders with k < n - 1 inversions and pairs of partitions of total size k.
    #[command(name = "1324")]
    B1324 {
        #[arg(long, value_parser = parse_perm, conflicts_with_all = ["lambda", "mu", "n"])]
        perm: Option<Perm>,
        #[arg(long, requires_all = ["mu", "n"])]
        lambda: Option<permpat::partition::Partition>,
        #[arg(long, requires_all = ["lambda", "n"])]
        mu: Option<permpat::partition::Partition>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Red entries avoid sigma+(tau-1); blue entries avoid (tau-1)+rho on composite avoiders.
    RedBlue {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// inv(pi) >= n - #components on all of S_n.
    CompInv {
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Columns of the inversion triangle are non-decreasing in n.
    InvMonotone {
        #[arg(long, value_parser = parse_perm)]
        pattern: Perm,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// p(k) < rho^sqrt(k) for 1 <= k <= kmax.
    PartitionBound {
        #[arg(long = "kmax", default_value_t = 1000)]
        k_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// |Q(k)| < (k+1) rho^sqrt(2k) for 1 <= k <= kmax.
    QBound {
        #[arg(long = "kmax", default_value_t = 500)]
        k_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// s_n of the composite pattern is at most the merge convolution of its two halves.
    Convolution {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long, value_parser = parse_perm)]
    pattern: Perm,
    #[arg(long)]
    k: usize,
    #[arg(long = "nmax")]
    n_max: usize,
    #[arg(long, default_value_t = permpat::asymptotics::DEFAULT_WINDOW, value_parser = parse_window)]
    window: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// What a command produced: the rendered text, and whether a check failed.
pub(crate) struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failed: false }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return EXIT_RUNTIME;
            }
            if outcome.failed {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_RUNTIME
        }
    }
}
