use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperrect::Error;

mod commands;
mod io;

#[derive(Parser, Debug)]
#[command(name = "hyperrect", version, about = "Hypergraphs of large chromatic number realized by rectangles and progressions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refuse constructions predicted to exceed this many vertices.
    #[arg(long, global = true, default_value_t = hyperrect::construction::DEFAULT_MAX_VERTICES)]
    pub max_vertices: u64,
    /// Node budget for exact coloring searches.
    #[arg(long, global = true, default_value_t = hyperrect::hypergraph::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build H_k^c or G^c(g) as staged JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Realize a staged hypergraph by points and rectangles.
    Realize {
        #[arg(long)]
        input: PathBuf,
        /// Nested y-projections (needed by `to-aps`).
        #[arg(long)]
        nested: bool,
        /// Verify this many sampled rectangles instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that a realization's rectangles contain exactly the edges.
    #[command(alias = "verify-realization")]
    Verify {
        #[arg(long)]
        realization: PathBuf,
        /// Staged or plain hypergraph JSON.
        #[arg(long)]
        hypergraph: PathBuf,
    },
    /// Translate a nested realization into arithmetic progressions.
    ToAps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ApMode::Pow2)]
        mode: ApMode,
        #[arg(long, value_enum, default_value_t = DifferenceSetArg::Primes)]
        difference_set: DifferenceSetArg,
        /// Whitespace or comma separated differences for `--difference-set file`.
        #[arg(long)]
        differences: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The rectangle capturing A ∩ V for a progression with difference 2^t.
    ApCapture {
        /// Comma separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        set: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long)]
        difference: String,
        #[arg(long)]
        length: String,
    },
    /// Exact chromatic number.
    Chromatic {
        #[arg(long)]
        input: PathBuf,
    },
    /// Hypergraph girth with a witness cycle.
    Girth {
        #[arg(long)]
        input: PathBuf,
    },
    /// A monochromatic edge of H_k^c under a 2-or-more coloring.
    FindMono {
        #[arg(long)]
        input: PathBuf,
        /// Coloring JSON `{"c": .., "colors": [..]}`; random when absent.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Palette size for random colorings.
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
    /// Hasse diagram of the dominance order.
    Hasse {
        /// Realization JSON or `{"points": [[x, y], ..]}`.
        #[arg(long)]
        points: PathBuf,
    },
    /// A monochromatic increasing path of k vertices in the Hasse diagram.
    MonoPath {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// The n-th van der Corput term.
    Vdc {
        #[arg(long)]
        n: String,
    },
    /// The point set (n, a_n) for a set of integers.
    Embed {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        set: Vec<String>,
    },
    /// Draw a realization.
    Svg {
        #[arg(long)]
        realization: PathBuf,
        #[arg(long, value_enum, default_value_t = LayoutArg::Rank)]
        layout: LayoutArg,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Comma separated rectangle indices to emphasize.
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    Hkc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Gcg {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = ProviderArg::OddCycle)]
        provider: ProviderArg,
        /// Sampling attempts for the random provider.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApMode {
    Pow2,
    General,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceSetArg {
    Primes,
    Pow2,
    Pow3,
    File,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderArg {
    OddCycle,
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutArg {
    Rank,
    Exact,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let doc = serde_json::json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{doc}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}

pub type CliResult<T> = Result<T, Error>;
