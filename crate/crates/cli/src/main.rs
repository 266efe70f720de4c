//! `dynpat`: run edit scripts against a text, fuzz the engine against a
//! naive recount, and benchmark the two.

mod script;

use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynpat::workload::{self, BenchConfig, FuzzConfig};
use dynpat::{Session, TextIndex};
use thiserror::Error;

use script::ParseError;

#[derive(Parser)]
#[command(name = "dynpat", version, about = "Count occurrences of an editable pattern in a static text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an op script, printing the occurrence count after each op.
    Run {
        /// Text file, read as raw bytes (a trailing newline is part of the text).
        #[arg(long)]
        text: PathBuf,
        /// Op script, one operation per line.
        #[arg(long)]
        ops: PathBuf,
    },
    /// Run a random script through the engine and a naive recount in lockstep.
    Fuzz {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        text_size: u64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        ops: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=26))]
        alphabet: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper bound on the pattern length during the script.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        max_pattern: u64,
        /// Probability that an inserted or searched symbol is absent from the text.
        #[arg(long, default_value_t = 0.05)]
        alien_rate: f64,
        /// Also verify partition maximality after every op.
        #[arg(long)]
        check_maximality: bool,
    },
    /// Time random symbol edits: engine versus naive recount after every edit.
    Bench {
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        text_size: u64,
        #[arg(long, default_value_t = 10_000)]
        ops: u64,
        #[arg(long, default_value_t = 500_000, value_parser = clap::value_parser!(u64).range(1..))]
        pattern_size: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=26))]
        alphabet: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the naive recount.
        #[arg(long)]
        no_naive: bool,
    },
    /// Print the suffix array and LCP array, and optionally a pattern's partition.
    Dump {
        #[arg(long)]
        text: PathBuf,
        /// Pattern token (same escapes as op scripts).
        #[arg(long)]
        pattern: Option<String>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Config(dynpat::Error),
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: line {line}: {source}", path.display())]
    Op {
        path: PathBuf,
        line: usize,
        source: dynpat::Error,
    },
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("cannot write output: {0}")]
    Write(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Config(_) | CliError::Write(_) => 2,
            CliError::Parse { .. } | CliError::Pattern(_) => 3,
            CliError::Op { .. } => 4,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn run(text_path: &Path, ops_path: &Path) -> Result<(), CliError> {
    let text = read(text_path)?;
    let src = read(ops_path)?;
    let lines = script::parse_script(&src).map_err(|source| CliError::Parse {
        path: ops_path.to_path_buf(),
        source,
    })?;
    let index = TextIndex::build(&text).map_err(CliError::Config)?;
    let mut session = Session::new(&index);
    let mut out = BufWriter::new(io::stdout().lock());
    for line in &lines {
        match session.apply(&line.op) {
            Ok(count) => writeln!(out, "{count}")?,
            Err(source) => {
                out.flush()?;
                return Err(CliError::Op {
                    path: ops_path.to_path_buf(),
                    line: line.line,
                    source,
                });
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn dump(text_path: &Path, pattern: Option<&str>) -> Result<(), CliError> {
    let text = read(text_path)?;
    let index = TextIndex::build(&text).map_err(CliError::Config)?;
    let mut out = BufWriter::new(io::stdout().lock());
    out.write_all(index.dump().as_bytes())?;
    if let Some(token) = pattern {
        let pattern = script::unescape(token.as_bytes()).map_err(CliError::Pattern)?;
        let mut session = Session::new(&index);
        let count = session.set_pattern(&pattern);
        out.write_all(session.tree().dump().as_bytes())?;
        writeln!(out, "count {count}")?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { text, ops } => run(&text, &ops),
        Command::Dump { text, pattern } => dump(&text, pattern.as_deref()),
        Command::Fuzz {
            text_size,
            ops,
            alphabet,
            seed,
            max_pattern,
            alien_rate,
            check_maximality,
        } => {
            let mut config = FuzzConfig::new(text_size as usize, ops as usize, alphabet as usize, seed);
            config.max_pattern_len = max_pattern as usize;
            config.alien_rate = alien_rate.clamp(0.0, 1.0);
            config.check_maximality = check_maximality;
            let report = workload::fuzz(&config);
            println!(
                "ops {}  max merges per symbol edit {}  per substring edit {}",
                report.ops_run, report.max_char_edit_merges, report.max_substring_merges
            );
            return match &report.divergence {
                None => {
                    println!("pass");
                    ExitCode::SUCCESS
                }
                Some(d) => {
                    println!(
                        "FAIL at op {} `{}`: {} (engine {:?}, naive {:?})",
                        d.step, d.op, d.reason, d.engine, d.oracle
                    );
                    ExitCode::from(1)
                }
            };
        }
        Command::Bench {
            text_size,
            ops,
            pattern_size,
            alphabet,
            seed,
            no_naive,
        } => {
            let report = workload::bench(&BenchConfig {
                text_len: text_size as usize,
                ops: ops as usize,
                pattern_len: pattern_size as usize,
                alphabet: alphabet as usize,
                seed,
                naive: !no_naive,
            });
            print!("{}", report.table());
            if report.mismatches > 0 {
                eprintln!("warning: {} counts disagreed with the recount", report.mismatches);
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dynpat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
