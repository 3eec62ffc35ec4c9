use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod verify;

const GRAMMAR: &str = "\
Term grammar:
  sum  := prod ('+' prod)*
  prod := atom ('*2')*
  atom := 'fin(' nat ')' | 'Z' | 'Q' | 'R' | 'w' | 'w*' | 'omega' | 'omega*' | '(' sum ')'

Element syntax, relative to a term:
  fin(n), w   k            w*   -k
  Z           signed k     Q    p/q or k
  R           p/q, sqrt(n), r+c*sqrt(n)   (membership queries only)
  sum         i:inner      (0-based part index)
  t*2         inner.0 / inner.1

Dense sets (--dense):
  canonical | left | right | omit:e1,e2,... | only:e1,e2,...

Exit codes: 0 success, 1 domain error (JSON on stdout with --json), 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "linord", version, about = "Classify and embed linear orders given as terms", after_help = GRAMMAR)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Back-and-forth into the rationals.
    Q,
    /// Weighted-sum embedding into R×2.
    R2,
    /// Weighted-sum embedding into R.
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Succ,
    Pred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Dense,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Order,
    Enumerate,
    Roundtrip,
    Dense,
    Embed,
    Jumps,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct Sampling {
    /// Enumeration prefix length for density checks.
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    /// Sampled pairs for density checks.
    #[arg(long, default_value_t = 200)]
    pairs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cardinality, jumps, separability and embeddability of a term.
    Classify { term: String },
    /// The first COUNT elements in enumeration order.
    Enumerate {
        term: String,
        #[arg(long)]
        count: usize,
    },
    /// The first COUNT jumps.
    Jumps {
        term: String,
        #[arg(long)]
        count: usize,
    },
    /// Compare two elements, with a certificate from the R×2 embedding.
    Compare {
        term: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "canonical")]
        dense: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Immediate successor or predecessor of an element.
    Neighbor {
        term: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, value_enum, default_value_t = SideArg::Succ)]
        side: SideArg,
    },
    /// Least and greatest elements.
    Bounds { term: String },
    /// Jump relations of one element, or of a pair.
    Relations {
        term: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Membership of an element in a dense set.
    Member {
        term: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value = "canonical")]
        dense: String,
    },
    /// Budgeted density check of a dense set.
    CheckDense {
        term: String,
        #[arg(long, default_value = "canonical")]
        dense: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Dense)]
        mode: ModeArg,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Image of an element under an embedding.
    Embed {
        term: String,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Stage of the printed approximant.
        #[arg(long, default_value_t = 16)]
        precision: u64,
        #[arg(long, default_value = "canonical")]
        dense: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Extend a partial map on Q*2 to an automorphism and apply it.
    HomogExtend {
        /// File of `src -> dst` lines.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Inline `src -> dst` pair; repeatable.
        #[arg(long = "pair", allow_hyphen_values = true)]
        pairs: Vec<String>,
        /// Element to map forward and back; repeatable.
        #[arg(long = "probe", allow_hyphen_values = true)]
        probes: Vec<String>,
    },
    /// Run a property suite on a term.
    Verify {
        term: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Sampled cases per check.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// The supremum-map collision and its robust separation.
    DemoCollision,
}

/// Something to print: JSON and text renderings of one result.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// False when a verification suite found failures.
    pub ok: bool,
}

impl Report {
    pub fn new(json: serde_json::Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

fn run(cli: &Cli) -> linord::Result<Report> {
    use commands::*;
    match &cli.command {
        Command::Classify { term } => classify(term),
        Command::Enumerate { term, count } => enumerate(term, *count),
        Command::Jumps { term, count } => jumps(term, *count),
        Command::Compare { term, x, y, dense, sampling } => compare(term, x, y, dense, sampling, cli.seed),
        Command::Neighbor { term, element, side } => neighbor(term, element, *side),
        Command::Bounds { term } => bounds(term),
        Command::Relations { term, x, y } => relations(term, x, y.as_deref()),
        Command::Member { term, element, dense } => member(term, element, dense),
        Command::CheckDense { term, dense, mode, sampling } => check_dense(term, dense, *mode, sampling, cli.seed),
        Command::Embed { term, target, element, precision, dense, sampling } => {
            embed(term, *target, element, *precision, dense, sampling, cli.seed)
        }
        Command::HomogExtend { map, pairs, probes } => homog_extend(map.as_deref(), pairs, probes),
        Command::Verify { term, suite, count, sampling } => verify::run(term, *suite, *count, sampling, cli.seed),
        Command::DemoCollision => demo_collision(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(&cli) {
        Ok(report) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("reports serialize")
            } else {
                report.text.trim_end().to_string()
            };
            let _ = writeln!(out, "{body}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            if cli.json {
                let body = serde_json::json!({
                    "error": { "module": err.module(), "kind": err.kind(), "message": err.to_string() }
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("errors serialize"));
            } else {
                eprintln!("error [{}/{}]: {err}", err.module(), err.kind());
            }
            ExitCode::from(1)
        }
    }
}
