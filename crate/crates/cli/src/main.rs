mod cache;
mod commands;
mod config;
mod error;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{OutputFormat, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "cftkit",
    version,
    about = "Exact modular data, modular invariants and extension catalogs"
)]
struct Cli {
    /// File of key=value lines (order, precision_bits, cache_dir, output, entry_bound).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of markdown.
    #[arg(long, global = true)]
    json: bool,
    /// Series truncation order.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Bits of precision for numeric columns.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Directory of the commutant cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Upper bound on invariant entries during enumeration.
    #[arg(long, global = true)]
    entry_bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Sl2,
    Minimal,
}

/// Theory parameters; `--level` for sl2, `--m` for minimal models.
#[derive(Args, Debug, Clone)]
pub struct TheoryParams {
    #[arg(long, allow_negative_numbers = true)]
    level: Option<i64>,
    #[arg(long = "m", allow_negative_numbers = true)]
    m: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct TheoryArgs {
    #[arg(long, value_enum)]
    algebra: Algebra,
    #[command(flatten)]
    params: TheoryParams,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Labels, weights, T phases, quantum dimensions and the exact S matrix.
    Mdata {
        #[arg(value_enum)]
        algebra: Algebra,
        #[command(flatten)]
        params: TheoryParams,
    },
    /// Truncated character of one module.
    Char {
        #[command(subcommand)]
        which: CharCommand,
    },
    /// Modular invariants.
    Invariants {
        #[command(subcommand)]
        action: InvariantCommand,
    },
    /// Coset decompositions, mirror extensions and conformal embeddings.
    Coset {
        #[command(subcommand)]
        action: CosetCommand,
    },
    /// Identify an extension from its summands.
    Classify {
        /// Central charge `p/q` of a minimal model; summands are Kac labels.
        #[arg(long, allow_negative_numbers = true)]
        c: Option<String>,
        /// sl2 level; summands are highest weights.
        #[arg(long, allow_negative_numbers = true)]
        level: Option<i64>,
        #[arg(long)]
        summands: String,
    },
    /// Extensions constructed for a theory.
    Catalog {
        #[command(flatten)]
        theory: TheoryArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CharCommand {
    Sl2 {
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
    Minimal {
        #[arg(long = "m", allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantCommand {
    /// Search for every physical invariant.
    Enumerate {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Skip the commutant cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Check a tabulated invariant or a matrix from a JSON file.
    Verify {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        tag: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Tabulated invariants of the theory.
    Expected {
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Invariant of a cataloged extension, or of a decomposition file.
    FromExtension {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(
            long,
            conflicts_with = "decomposition",
            required_unless_present = "decomposition"
        )]
        summands: Option<String>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CosetCommand {
    /// Compare both sides of the coset decomposition up to `--order`.
    Verify {
        #[arg(long = "m", allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        eps: i64,
    },
    /// Transfer a level m+1 sl2 extension to model m.
    Mirror {
        #[arg(long = "m", allow_negative_numbers = true)]
        m: i64,
        /// Comma-separated sl2 weights, vacuum included.
        #[arg(long)]
        summands: String,
    },
    /// Central charge and weight-one dimension of an embedding into a level-one algebra.
    Embedding {
        #[arg(long, allow_negative_numbers = true)]
        level: i64,
        #[arg(long, value_enum)]
        target: Target,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    B2,
    G2,
}

/// Rendered output and whether every check in it passed.
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    pub fn pass(text: String) -> Self {
        Report { text, passed: true }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(o) = cli.order {
        cfg.order = o;
    }
    if let Some(b) = cli.precision_bits {
        cfg.precision_bits = b;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = d.clone();
    }
    if cli.entry_bound.is_some() {
        cfg.entry_bound = cli.entry_bound;
    }
    if cli.json {
        cfg.output = OutputFormat::Json;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let cfg = resolve_config(&cli)?;
    match cli.command {
        Command::Mdata { algebra, params } => commands::mdata(&cfg, algebra, &params),
        Command::Char { which } => match which {
            CharCommand::Sl2 { level, j } => commands::char_sl2(&cfg, level, j),
            CharCommand::Minimal { m, r, s } => commands::char_minimal(&cfg, m, r, s),
        },
        Command::Invariants { action } => match action {
            InvariantCommand::Enumerate { theory, no_cache } => {
                commands::enumerate(&cfg, &theory, no_cache)
            }
            InvariantCommand::Verify {
                theory,
                tag,
                matrix,
            } => commands::verify(&cfg, &theory, tag.as_deref(), matrix.as_deref()),
            InvariantCommand::Expected { theory } => commands::expected(&cfg, &theory),
            InvariantCommand::FromExtension {
                theory,
                summands,
                decomposition,
            } => commands::from_extension(
                &cfg,
                &theory,
                summands.as_deref(),
                decomposition.as_deref(),
            ),
        },
        Command::Coset { action } => match action {
            CosetCommand::Verify { m, n, eps } => commands::coset_verify(&cfg, m, n, eps),
            CosetCommand::Mirror { m, summands } => commands::mirror(&cfg, m, &summands),
            CosetCommand::Embedding { level, target } => commands::embedding(&cfg, level, target),
        },
        Command::Classify { c, level, summands } => {
            commands::classify(&cfg, c.as_deref(), level, &summands)
        }
        Command::Catalog { theory } => commands::catalog(&cfg, &theory),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
