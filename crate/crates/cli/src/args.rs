use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ahpp", version, about = "Similarity search on attributed bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank U-nodes by similarity to one source node.
    Query(QueryArgs),
    /// Time solvers over a grid of epsilon and alpha values.
    Bench(BenchArgs),
    /// Run an effectiveness protocol.
    Eval(EvalArgs),
    /// Write a synthetic graph.
    Gen(GenArgs),
    /// Estimate the column-sum bound used by asrp.
    Lambda(LambdaArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge file: `u<TAB>v[<TAB>weight]` per line.
    #[arg(long)]
    pub edges: PathBuf,
    /// Attribute file: `u<TAB>attribute[<TAB>weight]` per line.
    #[arg(long)]
    pub attrs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 0.15)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.35)]
    pub beta: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value = "asrp")]
    pub algo: String,
    /// Power-iteration rounds for `pi`.
    #[arg(long = "T")]
    pub iterations: Option<usize>,
    /// Rounds used to estimate lambda for `asrp`.
    #[arg(long = "lambda-T", default_value_t = 30)]
    pub lambda_iterations: usize,
    /// Fixed lambda for `asrp` instead of estimating it.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Threshold unit for `fp` and `app`.
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
    /// Failure probability for `mc`.
    #[arg(long = "p-f", default_value_t = 1e-6)]
    pub p_f: f64,
    /// Walk count for `mc`.
    #[arg(long)]
    pub omega: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Id of the source U-node as written in the edge file.
    #[arg(long)]
    pub source: String,
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.35)]
    pub beta: f64,
    #[arg(long, value_delimiter = ',', default_value = "fp,app,asrp")]
    pub algos: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1e-6")]
    pub epsilons: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.15")]
    pub alphas: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub queries: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long = "T")]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
    #[arg(long = "p-f", default_value_t = 1e-6)]
    pub p_f: f64,
    #[arg(long)]
    pub omega: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMode {
    F1,
    Topk,
    Linkpred,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub mode: EvalMode,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Ground-truth clusters, `u<TAB>cluster` per line; required for `f1`.
    #[arg(long)]
    pub clusters: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub queries: usize,
    /// Share of edges deleted for `linkpred`.
    #[arg(long, default_value_t = 0.2)]
    pub fraction: f64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "u-count")]
    pub u_count: usize,
    #[arg(long = "v-count")]
    pub v_count: usize,
    #[arg(long = "attr-count", default_value_t = 0)]
    pub attr_count: usize,
    /// Number of U-V edges (hub-skewed generator).
    #[arg(long = "edge-count", default_value_t = 0)]
    pub edge_count: usize,
    #[arg(long = "attr-edge-count", default_value_t = 0)]
    pub attr_edge_count: usize,
    /// Plant this many U communities instead of using the skewed generator.
    #[arg(long = "planted")]
    pub planted: Option<usize>,
    #[arg(long = "edges-per-u", default_value_t = 5)]
    pub edges_per_u: usize,
    #[arg(long = "attrs-per-u", default_value_t = 2)]
    pub attrs_per_u: usize,
    #[arg(long = "intra-prob", default_value_t = 0.8)]
    pub intra_prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "edges-out")]
    pub edges_out: PathBuf,
    #[arg(long = "attrs-out")]
    pub attrs_out: PathBuf,
    /// Where to write the planted labels.
    #[arg(long = "clusters-out")]
    pub clusters_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.15)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.35)]
    pub beta: f64,
    #[arg(long = "T", default_value_t = 30)]
    pub iterations: usize,
}
