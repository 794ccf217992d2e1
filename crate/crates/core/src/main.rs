use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coxmin::cli::{
    cmd_analyze, cmd_automaton, cmd_corpus, parse_labels, AnalysisConfig, CliError, Format, GraphInput, EXIT_ERROR,
};
use coxmin::graph::CATALOG_HELP;

#[derive(Parser)]
#[command(
    name = "coxmin",
    version,
    about = "Minimality of Brink-Howlett automata for Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Graph file (`rank n` and `edge i j m` statements).
    file: Option<PathBuf>,
    /// A standard diagram by name.
    #[arg(long, help = format!("A standard diagram: {CATALOG_HELP}"))]
    name: Option<String>,
}

impl Input {
    fn into_graph_input(self) -> GraphInput {
        match (self.file, self.name) {
            (Some(path), _) => GraphInput::File(path),
            (None, Some(name)) => GraphInput::Name(name),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Elementary roots, automaton sizes and the three minimality verdicts.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Cap on the number of elementary roots.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Ball radius of the brute-force cross-check; 0 disables it.
        #[arg(long = "oracle-L", default_value_t = 8)]
        oracle_length: usize,
        /// Bound on |W_J| in the certificate search.
        #[arg(long, default_value_t = 1_000_000)]
        guard: usize,
    },
    /// Checks the verdicts on every connected graph up to isomorphism.
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Comma-separated edge labels.
        #[arg(long, default_value = "3,4,5,6,inf")]
        labels: String,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        text: bool,
    },
    /// Emits the automaton as Graphviz DOT.
    Automaton {
        #[command(flatten)]
        input: Input,
        /// Emit the minimized automaton.
        #[arg(long)]
        minimized: bool,
        /// Write to a file instead of standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let mut config = AnalysisConfig::default();
    match cli.command {
        Command::Analyze {
            input,
            json: _,
            text,
            cap,
            oracle_length,
            guard,
        } => {
            config.cap = cap;
            config.oracle_length = oracle_length;
            config.witness_guard = guard;
            config.format = if text { Format::Text } else { Format::Json };
            let (out, code) = cmd_analyze(&input.into_graph_input(), &config)?;
            print!("{out}");
            Ok(code)
        }
        Command::Corpus {
            max_rank,
            labels,
            jobs,
            cap,
            text,
        } => {
            config.corpus.max_rank = max_rank;
            config.corpus.labels = parse_labels(&labels)?;
            config.corpus.jobs = jobs;
            if let Some(cap) = cap {
                config.cap = cap;
            }
            let summary = cmd_corpus(&config)?;
            if text {
                print!("{}", summary.to_text());
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                );
            }
            Ok(summary.exit_code())
        }
        Command::Automaton {
            input,
            minimized,
            dot,
            cap,
        } => {
            config.cap = cap;
            config.emit_dot = true;
            let out = cmd_automaton(&input.into_graph_input(), &config, minimized)?;
            match dot {
                Some(path) => std::fs::write(&path, out).map_err(|source| CliError::Io { path, source })?,
                None => print!("{out}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
