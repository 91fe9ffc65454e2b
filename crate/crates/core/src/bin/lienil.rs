use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lienil::cli::{self, CliError, Format};

#[derive(Parser)]
#[command(name = "lienil", version, about = "Nilradicals of Borel subalgebras: construction, invariants, identification")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rank and dimension of every simple type up to a rank
    Table {
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Positive roots in simple-root coordinates
    Roots {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Graded invariants and pairing scan of a nilradical, as JSON
    Invariants { family: String, rank: usize },
    /// Write the nilradical of a type as an algebra file
    Emit {
        family: String,
        rank: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rewrite an algebra file in a random unimodular basis
    Obfuscate {
        input: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Name the simple Lie algebra whose nilradical an algebra file describes
    Identify { input: PathBuf },
    /// Run every structural check and print one line per claim
    VerifyClaims {
        #[arg(long)]
        max_rank: Option<usize>,
    },
}

fn run(cmd: Command) -> Result<(), CliError> {
    let bound = cli::rank_bound_from_env()?;
    match cmd {
        Command::Table { max_rank, format } => print!("{}", cli::cmd_table(max_rank.unwrap_or(bound), format.into())),
        Command::Roots { family, rank, format } => {
            print!("{}", cli::cmd_roots(cli::parse_type(&family, rank, bound)?, format.into()))
        }
        Command::Invariants { family, rank } => print!("{}", cli::cmd_invariants(cli::parse_type(&family, rank, bound)?)?),
        Command::Emit { family, rank, output } => cli::cmd_emit(cli::parse_type(&family, rank, bound)?, &output)?,
        Command::Obfuscate { input, seed, output } => cli::cmd_obfuscate(&input, seed, &output)?,
        Command::Identify { input } => print!("{}", cli::cmd_identify(&input, bound)?),
        Command::VerifyClaims { max_rank } => {
            let max_rank = max_rank.unwrap_or(bound.min(8));
            if max_rank > bound {
                return Err(CliError::Malformed(format!("--max-rank {max_rank} exceeds the bound {bound}")));
            }
            let (text, ok) = cli::cmd_verify_claims(max_rank);
            print!("{text}");
            if !ok {
                return Err(CliError::Rejected("some claims failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lienil: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
