use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dloc_cli::run::{self, VERIFY_FAILED};
use dloc_cli::{Failure, Problem, ResultDocument, RunOptions, TieBreak};

/// Localization of cyclic D-modules D/J at a polynomial f.
#[derive(Parser)]
#[command(name = "dloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Present D/J ⊗ R_f as a cyclic module D/I.
    Localize(ProblemArgs),
    /// Only the b-function of the localizing ideal.
    Bfunction(ProblemArgs),
    /// Characteristic ideal of the input and its dimension.
    Char(ProblemArgs),
    /// Apply operators to a function.
    Apply(ApplyArgs),
    /// Localize, then check that the output annihilates a function.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Overrides the problem's `function:` field.
        #[arg(long)]
        function: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Emit {
    Text,
    Structured,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    emit: Emit,
    /// Write the document to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem file (text or JSON).
    problem: PathBuf,
    #[arg(long, value_enum)]
    tie_break: Option<TieArg>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Print intermediate bases to standard error.
    #[arg(long)]
    verbose: bool,
    /// Skip the characteristic-ideal dimensions.
    #[arg(long)]
    no_diagnostics: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ApplyArgs {
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Operator to apply; repeatable.
    #[arg(long = "op", required = true)]
    ops: Vec<String>,
    #[arg(long)]
    function: String,
    #[command(flatten)]
    out: Output,
}

fn load(path: &PathBuf) -> Result<Problem, Failure> {
    let src =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Problem::parse(&src).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn options(a: &ProblemArgs) -> RunOptions {
    RunOptions {
        tie_break: a.tie_break.map(|t| match t {
            TieArg::Grevlex => TieBreak::Grevlex,
            TieArg::Lex => TieBreak::Lex,
        }),
        max_steps: a.max_steps,
        diagnostics: !a.no_diagnostics,
        verbose: a.verbose,
    }
}

fn emit(doc: &ResultDocument, out: &Output) -> Result<(), Failure> {
    let text = match out.emit {
        Emit::Text => doc.to_text(),
        Emit::Structured => doc.to_json(),
    };
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    let (doc, out) = match &cli.command {
        Command::Localize(a) => (run::localize(&load(&a.problem)?, &options(a))?, &a.out),
        Command::Bfunction(a) => (run::bfunction(&load(&a.problem)?, &options(a))?, &a.out),
        Command::Char(a) => (
            run::characteristic(&load(&a.problem)?, &options(a))?,
            &a.out,
        ),
        Command::Apply(a) => (run::apply(&a.vars, &a.ops, &a.function)?, &a.out),
        Command::Verify { problem, function } => (
            run::verify(
                &load(&problem.problem)?,
                function.as_deref(),
                &options(problem),
            )?,
            &problem.out,
        ),
    };
    emit(&doc, out)?;
    Ok(if doc.verified == Some(false) {
        VERIFY_FAILED
    } else {
        0
    })
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
