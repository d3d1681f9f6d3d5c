//! `nestword`: build group recognizers, run words through automata, and
//! compose closures from the command line.
//!
//! Exit status: 0 accept / identity / success, 1 reject / not identity /
//! I/O failure, 2 usage or parse error.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "nestword", version, about = "Nested words, visibly pushdown automata and group word problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the recognizer for a group spec and write it as JSON.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: String,
    },
    /// Run a tagged word through an automaton.
    Check {
        #[arg(long)]
        automaton: String,
        /// Print every configuration of the run.
        #[arg(long)]
        trace: bool,
        /// Test membership in the prefix closure instead.
        #[arg(long)]
        prefix: bool,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Print the canonical tagging of a trivial word.
    Annotate {
        #[arg(long)]
        group: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// List accepted words up to a length bound.
    Enum {
        #[arg(long)]
        automaton: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Apply a closure operation to automata files.
    Closure {
        /// union, intersection, complement, concat, star, reverse, prefix or shuffle
        #[arg(long)]
        op: String,
        #[arg(long, num_args = 1..)]
        inputs: Vec<String>,
        #[arg(long)]
        out: String,
    },
    /// Decide the word problem directly, without automata.
    Oracle {
        #[arg(long)]
        group: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        word: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { group, out } => commands::build(&group, &out),
        Command::Check { automaton, trace, prefix, word } => commands::check(&automaton, &word.join(" "), trace, prefix),
        Command::Annotate { group, word } => commands::annotate(&group, &word.join(" ")),
        Command::Enum { automaton, max_len } => commands::enumerate(&automaton, max_len),
        Command::Closure { op, inputs, out } => commands::closure(&op, &inputs, &out),
        Command::Oracle { group, word } => commands::oracle(&group, &word.join(" ")),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
