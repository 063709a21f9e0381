use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grammate", version, about = "Gram mates of zero-one matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Absolute tolerance for numeric checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Relative gap below which singular values count as equal
    #[arg(long = "rel-tol", global = true, default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Search node budget
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the resulting matrix to this file
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write resulting pairs to PREFIX_A.mtxt and PREFIX_B.mtxt
    #[arg(long = "out-prefix", global = true)]
    pub out_prefix: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether two matrices are Gram mates
    Verify { a: PathBuf, b: PathBuf },
    /// Seven-way convertibility test with Gram singular data
    Convertible { a: PathBuf, b: PathBuf },
    /// Rank, canonical form and realizability of a difference matrix
    Classify { e: PathBuf },
    /// A witness A with (A, A + E) Gram mates
    Complete { e: PathBuf },
    /// Closed-form Gram singular values of a rank-one or rank-two E
    GramData {
        e: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// A zero-one matrix with given row and column sums
    Urs {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "spread")]
        cols: Option<Vec<usize>>,
        /// Spread the rows over this many columns as evenly as possible
        #[arg(long, required_unless_present = "cols")]
        spread: Option<usize>,
    },
    /// Build a new pair from known ones
    Construct {
        #[arg(long, value_enum)]
        op: Op,
        inputs: Vec<PathBuf>,
    },
    /// Decide isomorphism under row and column permutations
    Isomorphic {
        a: PathBuf,
        b: PathBuf,
        /// Search only involutions (requires distinct singular values)
        #[arg(long = "distinct-sv")]
        distinct_sv: bool,
    },
    /// Fixability of the remaining matrix of a rank-one pair
    Fixable { a: PathBuf, b: PathBuf },
    /// All Gram pairs of a shape
    Enumerate {
        m: usize,
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        rowsums: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        colsums: Option<Vec<usize>>,
    },
    /// All Gram mates of a matrix
    MatesOf { a: PathBuf },
    /// Zero-one matrices with the given Gram matrices
    Reconstruct {
        #[arg(long)]
        grow: PathBuf,
        #[arg(long)]
        gcol: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Complement,
    Dirsum,
    Join,
    Kron,
    KronSwap,
    BlockSwap,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Complement => "complement",
            Op::Dirsum => "dirsum",
            Op::Join => "join",
            Op::Kron => "kron",
            Op::KronSwap => "kron-swap",
            Op::BlockSwap => "block-swap",
        }
    }

    /// Number of `.mtxt` inputs.
    pub fn arity(self) -> usize {
        match self {
            Op::Complement | Op::KronSwap | Op::BlockSwap => 2,
            Op::Dirsum | Op::Join | Op::Kron => 4,
        }
    }
}
