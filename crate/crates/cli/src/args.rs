use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dehnkit",
    version,
    about = "Iterated Baumslag-Solitar presentations, van Kampen diagrams and Dehn oracles"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command. Each flag falls back to its
/// environment variable, then to the config file, then to the default.
#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// Longest freely reduced word the oracle may visit.
    #[arg(long, global = true, env = "DEHNKIT_CAPS_MAX_LEN")]
    pub caps_max_len: Option<usize>,

    /// Most relator insertions the oracle may spend.
    #[arg(long, global = true, env = "DEHNKIT_CAPS_MAX_COST")]
    pub caps_max_cost: Option<usize>,

    /// Most distinct words the oracle may store.
    #[arg(long, global = true, env = "DEHNKIT_CAPS_MAX_STATES")]
    pub caps_max_states: Option<usize>,

    /// Largest exact exponent, in bits, before the solver saturates.
    #[arg(long, global = true, env = "DEHNKIT_BIT_CAP")]
    pub bit_cap: Option<u64>,

    /// Most cells a diagram builder may create.
    #[arg(long, global = true, env = "DEHNKIT_CELL_BUDGET")]
    pub cell_budget: Option<u64>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, env = "DEHNKIT_FORMAT")]
    pub format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, env = "DEHNKIT_OUT")]
    pub out: Option<PathBuf>,

    /// TOML file with defaults for the settings above.
    #[arg(long, global = true, env = "DEHNKIT_CONFIG")]
    pub config: Option<PathBuf>,

    /// Expand oracle search layers on all cores.
    #[arg(long, global = true, env = "DEHNKIT_PARALLEL")]
    pub parallel: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    #[value(name = "G")]
    G,
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "T")]
    T,
    #[value(name = "w")]
    W,
    #[value(name = "g")]
    LowerG,
    #[value(name = "v")]
    V,
}

/// Where a presentation comes from: a family or a JSON file.
#[derive(Debug, Args, Clone)]
pub struct PresentationArgs {
    /// Family letter: G, P, Q or T.
    #[arg(long, conflicts_with = "presentation")]
    pub family: Option<String>,

    /// Family parameter.
    #[arg(long, requires = "family")]
    pub n: Option<u32>,

    /// Presentation JSON file.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
}

/// A word: inline JSON (`[2,1,-2]`), shorthand (`w1`, `v2`, `g:3:3`) or a
/// JSON file.
#[derive(Debug, Args, Clone)]
pub struct WordArgs {
    /// Inline word: a JSON array such as [2,1,-2], or w<m>, v<n>, g:<n>:<k>.
    #[arg(long, conflicts_with = "word_file")]
    pub word: Option<String>,

    /// Word JSON file.
    #[arg(long)]
    pub word_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a presentation or witness word as JSON.
    Gen {
        family: GenFamily,
        /// `n` for presentations, `g` and `v`; `m` for `w`.
        n: u32,
        /// `k` for `g`.
        k: Option<u32>,
    },
    /// Decide whether a word is trivial in `G(n)` or `P(n)`.
    Wp {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Minimal number of relator insertions killing a word.
    Area {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        word: WordArgs,
        /// Also write the witness null sequence here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Minimal peak word length over null sequences.
    Fill {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        word: WordArgs,
        /// Also write the witness null sequence here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build, validate or decompose van Kampen diagrams.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// Replay elementary relator moves.
    Tietze {
        #[command(subcommand)]
        action: TietzeAction,
    },
    /// Tables of areas.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramKind {
    Power,
    W,
    Xn,
}

#[derive(Debug, Subcommand)]
pub enum DiagramAction {
    /// Build `power <m>`, `w <m>` or `xn 2`.
    Build { kind: DiagramKind, m: u32 },
    /// Check a diagram file; exits 1 when invalid.
    Validate { file: PathBuf },
    /// List the t-annuli of a diagram file.
    Annuli { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum TietzeAction {
    /// Apply an op list (JSON array) to a presentation.
    Replay {
        #[command(flatten)]
        presentation: PresentationArgs,
        /// Op list JSON file.
        #[arg(long)]
        ops: PathBuf,
    },
    /// Replay the standard sequence taking Q(n) to T(n).
    Trivialize {
        /// Family parameter.
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportAction {
    /// Diagram areas of w_m against the oracle.
    Scaling {
        /// Only `w_words` is available.
        #[arg(long, default_value = "w_words")]
        family: String,
        /// Range `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "1..10")]
        m: String,
        /// Run the oracle for m up to this value.
        #[arg(long, default_value_t = 3)]
        oracle_max_m: u32,
    },
    /// Largest area among trivial words of each length.
    DehnProfile {
        #[command(flatten)]
        presentation: PresentationArgs,
        /// Longest word length tabulated.
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
}
