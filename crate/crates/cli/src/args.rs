//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "widthlab", version, about = "Complementarity widths, batched greedy and auction experiments")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice (overrides WIDTHLAB_SEED).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Extra progress output on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Supermodular degree, widths and PH level of a function file.
    Widths(WidthsArgs),
    /// Batched greedy maximization.
    #[command(subcommand)]
    Maximize(MaximizeCommand),
    /// Writes a named instance in the function file format.
    Instance(InstanceArgs),
    /// Pointwise CH approximation certificate at one set.
    Approx(ApproxArgs),
    /// Auction experiments.
    #[command(subcommand)]
    Auction(AuctionCommand),
    /// Runs the acceptance suites.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct WidthsArgs {
    pub file: PathBuf,
    /// Also evaluate the scopic predicates for every d up to this value.
    #[arg(long)]
    pub max_d: Option<usize>,
    /// Alias for --format.
    #[arg(long, value_enum)]
    pub report: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum MaximizeCommand {
    /// Best set of at most k items.
    Constrained {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        /// Use the supermodular width as d (m <= 12).
        #[arg(long)]
        auto_width: bool,
        /// Also compute the exact optimum and the ratio.
        #[arg(long)]
        brute_force: bool,
    },
    /// Allocation of all items among the agents in the given files.
    Welfare {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        auto_width: bool,
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[command(subcommand)]
    pub kind: InstanceKind,
    /// Output file (standard output when absent).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum InstanceKind {
    ThresholdAnyTwo {
        #[arg(long)]
        m: usize,
    },
    PairMatching {
        #[arg(long)]
        t: usize,
    },
    SymmetricTwoLevel {
        #[arg(long)]
        m: usize,
    },
    AllPairs {
        #[arg(long)]
        m: usize,
    },
    Additive {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "mixed")]
        style: String,
    },
    /// Constrained lower-bound instance with R on the highest indices.
    HardCm {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        c1: usize,
        #[arg(long, default_value_t = 3)]
        c2: usize,
    },
    /// Welfare lower-bound instance, one agent per block.
    HardWm {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        c1: usize,
        #[arg(long, default_value_t = 3)]
        c2: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    ProjectivePlane {
        #[arg(long)]
        q: usize,
    },
    SingleBidPos {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    pub file: PathBuf,
    /// Width parameter; computed from the function when absent (m <= 12).
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value = "saw")]
    pub mode: String,
    /// Target set as a mask (decimal or 0x-prefixed); the full set by default.
    #[arg(long)]
    pub target_set: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum AuctionCommand {
    SingleBid(AuctionArgs),
    Sia(AuctionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum LearnerArg {
    #[default]
    RegretMatching,
    MultiplicativeWeights,
}

#[derive(Debug, Args)]
pub struct AuctionArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub valuations: Vec<PathBuf>,
    /// Bid grid step; a default grid of at most 64 levels otherwise.
    #[arg(long)]
    pub grid: Option<f64>,
    /// No-regret rounds; 0 skips the dynamics.
    #[arg(long, default_value_t = 10_000)]
    pub rounds: u64,
    #[arg(long, value_enum, default_value_t = LearnerArg::RegretMatching)]
    pub learner: LearnerArg,
    #[arg(long)]
    pub enumerate_nash: bool,
    /// SIA bundle support for one bidder, as `i:mask`; repeatable.
    #[arg(long)]
    pub support: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Suite {
    Propositions,
    Theorems,
    Maximization,
    Approximation,
    Auctions,
    #[default]
    All,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}
