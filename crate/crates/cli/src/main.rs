mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sepgraph::Level;

/// Exact computations in inverse semigroups of separated graphs.
#[derive(Parser, Debug)]
#[command(name = "sepgraph", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Accept vertices with no incoming and no outgoing edges.
    #[arg(long, global = true)]
    pub allow_isolated: bool,

    /// Maximum number of search nodes for enumerations.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a graph file and report its structure.
    Validate { graph: PathBuf },
    /// Normal form of a word.
    Nf {
        graph: PathBuf,
        #[arg(short = 'w', long)]
        word: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Separated)]
        level: LevelArg,
        /// Also print the free-group grading of the carrier.
        #[arg(long)]
        grading: bool,
    },
    /// Decide whether two words are equal.
    Eq {
        graph: PathBuf,
        #[arg(short = 'a')]
        a: String,
        #[arg(short = 'b')]
        b: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Separated)]
        level: LevelArg,
    },
    /// Normal form of the product of two words.
    Mul {
        graph: PathBuf,
        #[arg(short = 'a')]
        a: String,
        #[arg(short = 'b')]
        b: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Separated)]
        level: LevelArg,
    },
    /// List basis elements, idempotents or paths up to a length.
    Enumerate {
        graph: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = What::Basis)]
        what: What,
    },
    /// Filter certificates and cylinder-set operations.
    #[command(args_conflicts_with_subcommands = true)]
    Spectrum(SpectrumArgs),
    /// Check that the range projections of a finite block cover its vertex.
    Cover {
        graph: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        block: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// List the automorphisms of a separated graph.
    Aut { graph: PathBuf },
    /// Independent validators.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(subcommand)]
    pub cylinder: Option<SpectrumCommand>,
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub check: Option<CheckKind>,
    /// Comma-separated paths whose lower closure is the truncation.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCommand {
    /// Membership, intersection and difference of sets `Z(I ∖ F)`.
    Cylinder(CylinderArgs),
}

#[derive(Args, Debug)]
pub struct CylinderArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub op: CylinderOp,
    /// Paths generating `I` of the first cylinder.
    #[arg(long)]
    pub i1: String,
    /// Excluded paths `F` of the first cylinder.
    #[arg(long, default_value = "")]
    pub f1: String,
    #[arg(long)]
    pub i2: Option<String>,
    #[arg(long, default_value = "")]
    pub f2: String,
    /// Truncation tested by `member`.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Compare the engine with the peeling and rewriting oracles on random words.
    Crosscheck {
        graph: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum LevelArg {
    Free,
    Toeplitz,
    Separated,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Free => Level::Free,
            LevelArg::Toeplitz => Level::Toeplitz,
            LevelArg::Separated => Level::Separated,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum What {
    Basis,
    Idempotents,
    /// Nonzero, i.e. C-separated, paths.
    NcPaths,
    /// All reduced paths.
    Paths,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum CheckKind {
    Ultra,
    Tight,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum CylinderOp {
    Member,
    Intersect,
    Diff,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
