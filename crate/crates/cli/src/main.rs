use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod dot;
mod report;

/// Analyze dictionaries as definition graphs.
#[derive(Parser)]
#[command(name = "groundkernel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Highlight {
    Kernel,
    Mgs,
    None,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Dictionary file.
    pub file: PathBuf,
    /// Input format; guessed from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Accept words that are used in definitions but have no entry. They
    /// become primitive words with no definition.
    #[arg(long)]
    pub allow_open: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every defining word has an entry.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Words learnable from a seed set, with the step each is learned at.
    Reachable {
        #[command(flatten)]
        input: Input,
        /// Comma-separated seed words.
        #[arg(long, value_delimiter = ',', required = true)]
        from: Vec<String>,
        /// Percentage of a definition that has to be known.
        #[arg(long, default_value_t = 100)]
        relax: u32,
    },
    /// Grounding kernel, peeling rounds and levels.
    Kernel {
        #[command(flatten)]
        input: Input,
    },
    /// Level of every word relative to the kernel.
    Levels {
        #[command(flatten)]
        input: Input,
    },
    /// A minimum grounding set.
    Mgs {
        #[command(flatten)]
        input: Input,
        /// Largest component solved exactly.
        #[arg(long, default_value_t = 25)]
        exact_limit: usize,
    },
    /// Graphviz rendering of the definition graph.
    Export {
        #[command(flatten)]
        input: Input,
        /// Output file; stdout when omitted.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Highlight::None)]
        highlight: Highlight,
        #[arg(long, default_value_t = 25)]
        exact_limit: usize,
    },
    /// Full report: sizes, components, kernel, levels and grounding set.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 25)]
        exact_limit: usize,
        /// Optional seed words for a reachability section.
        #[arg(long, value_delimiter = ',')]
        from: Vec<String>,
        #[arg(long, default_value_t = 100)]
        relax: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Reachable { input, from, relax } => commands::reachable(&input, &from, relax),
        Command::Kernel { input } => commands::kernel(&input),
        Command::Levels { input } => commands::levels(&input),
        Command::Mgs { input, exact_limit } => commands::mgs(&input, exact_limit),
        Command::Export {
            input,
            dot,
            highlight,
            exact_limit,
        } => commands::export(&input, dot.as_deref(), highlight, exact_limit),
        Command::Analyze {
            input,
            exact_limit,
            from,
            relax,
        } => commands::analyze(&input, exact_limit, &from, relax),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("groundkernel: {}", failure.message);
            failure.code
        }
    }
}
