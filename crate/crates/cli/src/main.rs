//! `semiglue`: gluings, complete intersections, Frobenius vectors and
//! Hilbert series of affine semigroups from the command line.
//!
//! Input is a JSON document `{"generators": [[...], ...]}` with one
//! generator per row. Output is pretty-printed JSON on stdout; failures print
//! `{"error": ...}` on stderr and exit with 2 (invalid input) or 3 (the
//! command does not apply to the input).

mod commands;
mod error;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CorpusKind, Input};
use error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "semiglue", version)]
#[command(about = "Gluings, Frobenius vectors and Hilbert series of affine semigroups")]
#[command(after_help = "EXAMPLES:
    echo '{\"generators\": [[4],[5],[6]]}' | semiglue ci
    semiglue --input plane.json glue check --partition 3,4,5
    semiglue --input s.json hilbert --expand 12
    semiglue numerical glue --s1 2,3 --d1 2 --s2 1 --d2 5")]
struct Cli {
    /// Input document; standard input when omitted
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal generators, group lattice, cone and simpliciality
    Analyze,
    /// Check or search gluing partitions
    #[command(subcommand)]
    Glue(GlueCommand),
    /// Complete-intersection decomposition and its Frobenius vector
    Ci,
    /// Frobenius vector of a complete intersection, verified on a box
    Frobenius {
        /// Box bound, one value per coordinate or a single value for all
        #[arg(long = "box", default_value = "20")]
        bx: String,
    },
    /// Hilbert series as a rational function
    Hilbert {
        /// Also expand the series on this box
        #[arg(long)]
        expand: Option<String>,
        /// Use the Apéry set over the extremal rays
        #[arg(long)]
        simplicial: bool,
        /// Largest box the simplicial Apéry search may use
        #[arg(long, default_value = "64")]
        budget: String,
    },
    /// Apéry set of an element
    Apery {
        /// The element, e.g. 4 or 2,2
        #[arg(long)]
        base: String,
        /// Search box; required to be large enough in rank above one
        #[arg(long = "box")]
        bx: Option<String>,
    },
    /// Betti elements and a minimal presentation
    Betti {
        /// Search bound; defaults to the safe bound
        #[arg(long)]
        bound: Option<String>,
    },
    /// Numerical semigroup invariants and gluings
    #[command(subcommand)]
    Numerical(NumericalCommand),
    /// Seeded random test instances
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value = "numerical")]
        kind: CorpusKind,
    },
}

#[derive(Subcommand, Debug)]
enum GlueCommand {
    /// Check one partition, given as the input rows on one side
    Check {
        #[arg(long)]
        partition: String,
    },
    /// All partitions that are gluings
    Find,
}

#[derive(Subcommand, Debug)]
enum NumericalCommand {
    /// Frobenius number, gaps, pseudo-Frobenius numbers and type
    Invariants,
    /// Symmetry flags and α-rectangularity
    Classify,
    /// The gluing d1 S1 + d2 S2 of two numerical semigroups
    Glue {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        s2: String,
        #[arg(long)]
        d2: u64,
    },
}

fn load(cli: &Cli) -> CliResult<Input> {
    Input::new(input::read_rows(cli.input.as_deref())?)
}

fn run(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Analyze => commands::analyze(&load(cli)?),
        Command::Glue(GlueCommand::Check { partition }) => commands::glue_check(&load(cli)?, partition),
        Command::Glue(GlueCommand::Find) => commands::glue_find(&load(cli)?),
        Command::Ci => commands::ci(&load(cli)?),
        Command::Frobenius { bx } => commands::frobenius(&load(cli)?, bx),
        Command::Hilbert { expand, simplicial, budget } => {
            commands::hilbert(&load(cli)?, expand.as_deref(), *simplicial, budget)
        }
        Command::Apery { base, bx } => commands::apery(&load(cli)?, base, bx.as_deref()),
        Command::Betti { bound } => commands::betti(&load(cli)?, bound.as_deref()),
        Command::Numerical(NumericalCommand::Invariants) => commands::numerical_invariants(&load(cli)?),
        Command::Numerical(NumericalCommand::Classify) => commands::numerical_classify(&load(cli)?),
        Command::Numerical(NumericalCommand::Glue { s1, d1, s2, d2 }) => {
            commands::numerical_glue(s1, *d1, s2, *d2)
        }
        Command::Corpus { seed, count, kind } => commands::corpus(*kind, *seed, *count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let doc = json!({ "error": { "kind": e.kind(), "message": e.message() } });
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::from(e.exit_code())
        }
    }
}
