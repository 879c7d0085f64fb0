use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rsk_core::Side;

#[derive(Debug, Parser)]
#[command(name = "rsk", version, about = "RSK shapes of nearby permutations")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Stream sweep records as JSON lines, followed by the result record.
    #[arg(long, global = true)]
    pub jsonl: bool,

    /// Worker threads for searches and sweeps [default: available parallelism].
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// TOML file of flag values; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    /// Every permutation and every adjacent swap (t = 1).
    Exhaustive,
    /// Random walks of adjacent swaps.
    Walk,
    /// Random walks of arbitrary position swaps.
    Transpositions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqMode {
    /// Check the bound on every integer pair with k ≤ --k and 3 ≤ T ≤ --T.
    Enumerate,
    /// Exact minimizer of N/Δ² for k ≤ --k, cap --T.
    Minimize,
    /// Statistics of one pair given by --a, --b, --T.
    Check,
    /// The doubling family of length --k.
    Tight,
    /// Geometric stationary point and its residuals.
    Kkt,
    /// Reduce a diagram pair (--lam, --mu) to sequences.
    Reduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Exhaustive single-swap cap for n ≤ 8, both sides.
    AdjacentCap,
    /// Prefix inequalities and block areas on seeded walks, n = 30, t ≤ 10.
    BlockArea,
    /// Sequence bound on every pair with k ≤ 4, T ≤ 10.
    SequenceBound,
    /// The extremal pair on 18 points found by random search.
    SimulationExample,
    /// The constructed pair on 18 points and its certificates.
    Construction,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Insertion and recording tableaux of a permutation.
    Rsk {
        #[arg(long)]
        perm: String,
    },
    /// Δ between two partitions.
    Delta {
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Adjacent-transposition distance between two permutations.
    Distance {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        tau: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Extremal pair for n points and t transpositions.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Include monotone decompositions certifying both shapes (t = 1).
        #[arg(long)]
        emit_witness: bool,
        /// Blocks of two adjacent odd sizes instead of one common size.
        #[arg(long)]
        balanced: bool,
    },
    /// Blocks of the symmetric difference of two diagrams.
    Blocks {
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Greene invariants of a permutation.
    Greene {
        #[arg(long)]
        perm: String,
        /// Report the maximum union of this many increasing subsequences.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Exhaustive or random search for pairs with large Δ.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SearchMode::Exhaustive)]
        mode: SearchMode,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Skip permutations that are not least under reversal and complement.
        #[arg(long)]
        prune: bool,
    },
    /// Integer sequence pairs and the continuous optimum.
    Seqlemma {
        #[arg(long, value_enum)]
        mode: SeqMode,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "T")]
        cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        ell1: usize,
        #[arg(long, default_value_t = 1)]
        ell2: usize,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        lam: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Run a verification suite; exits with status 2 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Walks per t in the block-area suite.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}
