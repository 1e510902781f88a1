use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "subtsp", version, about = "Sublinear MST and TSP estimators: instances, runs, sweeps and checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Root seed; `verify` replays only this seed when given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Constant profile of the query algorithms.
    #[arg(long, global = true, default_value = "desk", value_parser = ["desk", "scaling", "paper"])]
    pub profile: String,
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv"])]
    pub format: String,
    /// Flat `key = value` file of flag defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an instance file.
    Gen(GenArgs),
    /// Print exact reference values of an instance as `name=value` lines.
    Oracle(OracleArgs),
    /// One-pass MST estimate over a shuffled stream.
    RunStreamMst(StreamMstArgs),
    /// Two-pass TSP estimate over a shuffled stream.
    RunStreamTsp(InputArgs),
    /// Query algorithm for instances whose weight-1 graph is connected.
    RunQueryG1(InputArgs),
    /// Query algorithm given a minimum spanning tree.
    RunQueryMst(QueryMstArgs),
    /// Run a seeded suite and write one CSV row per run.
    Bench(BenchArgs),
    /// Check the structural inequalities with exact oracles.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Onepass,
    Multipass,
    Gadget,
    Coi,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Option<GenKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "weighted-closure")]
    pub style: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// `L`.
    #[arg(long)]
    pub big_l: Option<i64>,
    /// Group size `N`.
    #[arg(long)]
    pub group: Option<usize>,
    /// Number of groups `m`.
    #[arg(long)]
    pub m: Option<usize>,
    /// `M`.
    #[arg(long)]
    pub big_m: Option<i64>,
    #[arg(long, default_value = "Y")]
    pub which: String,
    /// Matrix rows of 0/1 separated by `/`, e.g. `01/10`.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub istar: usize,
    #[arg(long, default_value_t = 0)]
    pub jstar: usize,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file in `metric` or `graph` format.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Pairs `u,v` whose distance to print.
    #[arg(long = "pair")]
    pub pairs: Vec<String>,
}

#[derive(Debug, Args)]
pub struct StreamMstArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 100.0)]
    pub c_boost: f64,
}

#[derive(Debug, Args)]
pub struct QueryMstArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// `derive` or a tree file of `child parent weight` lines.
    #[arg(long, default_value = "derive")]
    pub mst: String,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub suite: Option<String>,
    /// Half-open range `a..b`, or a single seed.
    #[arg(long, default_value = "0..10")]
    pub seeds: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = ["fast", "full"], default_value = "fast")]
    pub level: String,
    /// Run only these suites.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Leave these suites out.
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, value_parser = ["flip-adv-sign"])]
    pub inject_fault: Option<String>,
}
