use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "vcfc",
    version,
    about = "Conflict-free vertex-connection numbers of small graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One graph6 string per line; ids are 1-based line numbers.
    G6,
    /// Header `n m` followed by `m` edge lines.
    Edgelist,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Read graphs from FILE (default: standard input).
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::G6)]
    pub format: Format,
    /// Generate the input instead, e.g. "path 7", "corona 4 2", "all_connected 5 dedup".
    #[arg(
        long = "gen",
        global = true,
        value_name = "SPEC",
        conflicts_with = "input"
    )]
    pub generator: Option<String>,
    #[arg(long, global = true)]
    pub max_k: Option<usize>,
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for random generator specs without an explicit seed, and for regress.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Tree lower bound ceil(log2(d + 2)) instead of ceil(log2(d + 1)).
    #[arg(long, global = true)]
    pub strict_bounds: bool,
    /// Disable structural shortcuts; deepen the search from k = 1.
    #[arg(long, global = true)]
    pub search_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Ruler coloring of a path.
    Ruler,
    /// Two colors on a 2-connected graph.
    TwoConnected,
    /// Two colors on a graph with exactly one cut vertex.
    OneCut,
    /// Three colors when the bridges form a star.
    StarCutedges,
    /// Three colors on a t-corona of a cycle.
    Corona,
    /// Distance-level coloring of a tree.
    TreeLevel,
    /// Centroid ranking of a tree used as a coloring.
    CentroidRanking,
    /// Three colors under the maximum-degree condition (found by search).
    MaxDegree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact vcfc of every input graph.
    Solve,
    /// Check a coloring file against a single input graph.
    Verify {
        #[arg(long, value_name = "FILE")]
        coloring: PathBuf,
    },
    /// Emit and verify a named construction for every input graph.
    Construct {
        #[arg(value_enum)]
        name: Construction,
        /// Vertex given the unique color by two-connected.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Lower and upper bounds of every input graph.
    Bounds {
        /// Edge-list file of a spanning tree, for a single input graph.
        #[arg(long, value_name = "FILE")]
        spanning_tree: Option<PathBuf>,
    },
    /// Print a graph family in the selected format.
    Generate {
        /// Family spec; alternatively use --gen.
        spec: Option<String>,
    },
    /// Run the regression suites over all connected graphs up to --max-n.
    Regress {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Random instances per randomized suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also search trees of order 8 to 11 for a maximum-degree tightness witness.
        #[arg(long)]
        remark_probe: bool,
    },
    /// Test vcfc(G) <= ceil(log2(n + 1)) for every input graph.
    Conjecture,
}
