use clap::{Parser, Subcommand};
use isoparity::harness::{self, corpus::load_corpus, CommandOutput, OutputFormat, RunConfig};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Verify local and global parity identities for rational p-isogenies.
#[derive(Parser)]
#[command(name = "isoparity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every place of every corpus entry.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Number of random good places checked per entry.
        #[arg(long, default_value_t = 5)]
        good_sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest prime used for Frobenius sampling and point counts.
        #[arg(long, default_value_t = 10_000)]
        frobenius_bound: u64,
    },
    /// Local reduction data of one curve at one prime.
    Local {
        /// Coefficients "a1,a2,a3,a4,a6".
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        prime: u64,
    },
    /// The kernel character of one corpus entry and its local symbols.
    Character {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Quadratic twist of one corpus entry, re-verified.
    Twist {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        #[arg(long, default_value_t = 5)]
        good_sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive check of the local sign laws over residue data.
    CaseGrid {
        #[arg(long)]
        pmax: u64,
    },
}

fn with_corpus(path: &Path, f: impl FnOnce(&[harness::corpus::CorpusEntry]) -> CommandOutput) -> CommandOutput {
    match load_corpus(path) {
        Ok(entries) => f(&entries),
        Err(e) => CommandOutput::input_error(&e),
    }
}

fn run(cli: Cli) -> CommandOutput {
    match cli.command {
        Command::Verify { corpus, format, good_sample, seed, frobenius_bound } => {
            let config = RunConfig { frobenius_bound, good_place_sample: good_sample, seed, output_format: format };
            with_corpus(&corpus, |entries| harness::cmd_verify(entries, &config))
        }
        Command::Local { curve, prime } => harness::cmd_local(&curve, prime),
        Command::Character { corpus, label, seed } => {
            let config = RunConfig { seed, ..RunConfig::default() };
            with_corpus(&corpus, |entries| harness::cmd_character(entries, &label, &config))
        }
        Command::Twist { corpus, label, d, format, good_sample, seed } => {
            let config = RunConfig { good_place_sample: good_sample, seed, output_format: format, ..RunConfig::default() };
            with_corpus(&corpus, |entries| harness::cmd_twist(entries, &label, d, &config))
        }
        Command::CaseGrid { pmax } => harness::cmd_case_grid(pmax),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { harness::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let out = run(cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
