use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use habicht_cli::{
    cmd_dp, cmd_gen, cmd_reduce, cmd_subres, cmd_verify, parse_degrees, parse_index, CliError,
    InstanceFile, Outcome, Source, VerifyMode, VerifyOptions, EXIT_INVALID,
};
use habicht_core::Strategy;

/// Determinant polynomials, subresultants and generalized Habicht identities
/// over the integers.
#[derive(Parser, Debug)]
#[command(name = "habicht", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Instance file: {"polys": [[a00, a01, ...], ...]} with ascending coefficients.
    #[arg(long, conflicts_with = "random")]
    input: Option<String>,
    /// Generate a random instance with these degrees, e.g. 5,5,6.
    #[arg(long)]
    random: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SourceArgs {
    fn source(&self) -> Result<Source, CliError> {
        match (&self.input, &self.random) {
            (Some(path), None) => Ok(Source::File(path.clone())),
            (None, Some(d)) => Ok(Source::Random {
                degrees: parse_degrees(d)?,
                seed: self.seed,
            }),
            _ => Err(CliError("pass exactly one of --input or --random".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant polynomial of the listed polynomials.
    Dp {
        #[arg(long)]
        input: String,
        #[arg(long)]
        json_out: Option<String>,
    },
    /// δ-subresultant, its principal coefficient and δ0.
    Subres {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        json_out: Option<String>,
    },
    /// Verify the generalized Habicht identity exactly.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        /// Number of random instances (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, required_unless_present = "sweep")]
        w0: Option<String>,
        #[arg(long, required_unless_present = "sweep")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "sweep")]
        i: Option<usize>,
        /// Check every (w0, k, i) whose u lies in the index set.
        #[arg(long, conflicts_with_all = ["w0", "k", "i"])]
        sweep: bool,
        /// Upper bound on k for --sweep (default d0).
        #[arg(long, requires = "sweep")]
        max_k: Option<usize>,
        /// Negative control: evaluate with ε + 1.
        #[arg(long)]
        epsilon_off_by_one: bool,
        /// Include both sides of each identity.
        #[arg(long)]
        polys: bool,
        #[arg(long)]
        json_out: Option<String>,
    },
    /// Plan and verify a reduction of R_target.
    Reduce {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        target: String,
        /// A (unit moves) or B (maximal k).
        #[arg(long, default_value = "A")]
        strategy: Strategy,
        #[arg(long)]
        json_out: Option<String>,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long)]
        degrees: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json_out: Option<String>,
    },
}

fn run(cli: Cli) -> Result<(Outcome, Option<String>), CliError> {
    Ok(match cli.command {
        Command::Dp { input, json_out } => (cmd_dp(&InstanceFile::read(&input)?)?, json_out),
        Command::Subres {
            source,
            delta,
            json_out,
        } => (
            cmd_subres(&source.source()?, &parse_index(&delta)?)?,
            json_out,
        ),
        Command::Verify {
            source,
            trials,
            w0,
            k,
            i,
            sweep,
            max_k,
            epsilon_off_by_one,
            polys,
            json_out,
        } => {
            let mode = if sweep {
                VerifyMode::Sweep { max_k }
            } else {
                VerifyMode::Single {
                    w0: parse_index(w0.as_deref().unwrap_or_default())?,
                    k: k.unwrap_or_default(),
                    i: i.unwrap_or_default(),
                }
            };
            let opts = VerifyOptions {
                source: source.source()?,
                trials,
                mode,
                epsilon_off_by_one,
                include_polys: polys,
            };
            (cmd_verify(&opts)?, json_out)
        }
        Command::Reduce {
            source,
            target,
            strategy,
            json_out,
        } => (
            cmd_reduce(&source.source()?, &parse_index(&target)?, strategy)?,
            json_out,
        ),
        Command::Gen {
            degrees,
            seed,
            json_out,
        } => (cmd_gen(&parse_degrees(&degrees)?, seed)?, json_out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json_out)) => {
            for m in &outcome.messages {
                eprintln!("{m}");
            }
            let text = serde_json::to_string_pretty(&outcome.json).expect("serializable");
            match json_out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        eprintln!("cannot write {path}: {e}");
                        return ExitCode::from(EXIT_INVALID as u8);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
