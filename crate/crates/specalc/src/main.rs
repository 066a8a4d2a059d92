//! `specalc`: counts, cycle indices and brute-force checks for species
//! built from arithmetic products.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 parse or usage
//! error, 3 precondition failure, 4 scale limit, 5 `check` mismatch.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, TableKind, TableParams};
use output::{Format, OutputRecord};

#[derive(Parser)]
#[command(name = "specalc", version, about = "Exact arithmetic products of combinatorial species")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExprArgs {
    /// Species expression, e.g. "aprod(C, Lp)".
    expr: String,
    #[arg(long = "n", value_name = "N")]
    n: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Labelled counts |F[0]|, ..., |F[N]|.
    Counts(ExprArgs),
    /// Isomorphism-type counts from the cycle index.
    Types(ExprArgs),
    /// Cycle-index fix values for every cycle type of weight at most N.
    Zindex(ExprArgs),
    /// Coefficients |F[n]|/n! of the Dirichlet series, n = 1..N.
    Dirichlet(ExprArgs),
    /// Compare the evaluator with brute-force enumeration for n = 0..N.
    Check(ExprArgs),
    /// Dump every structure on {1..N} as JSON trees.
    Enumerate(ExprArgs),
    /// Tabulate rectangle, matrix and partial-rectangle counts.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long = "n", value_name = "N")]
        n: Option<u64>,
        #[arg(long = "k")]
        k: Option<u64>,
        #[arg(long = "m")]
        m: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(rec: &OutputRecord, common: &Common) -> Result<(), CliError> {
    match &common.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            rec.write(common.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            rec.write(common.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (rec, common) = match &cli.command {
        Command::Counts(a) => (commands::counts(&a.expr, a.n)?, &a.common),
        Command::Types(a) => (commands::types(&a.expr, a.n)?, &a.common),
        Command::Zindex(a) => (commands::zindex(&a.expr, a.n)?, &a.common),
        Command::Dirichlet(a) => (commands::dirichlet(&a.expr, a.n)?, &a.common),
        Command::Check(a) => (commands::check(&a.expr, a.n)?, &a.common),
        Command::Enumerate(a) => (commands::enumerate(&a.expr, a.n)?, &a.common),
        Command::Table { kind, n, k, m, tol, common } => {
            let params = TableParams { n: *n, k: *k, m: *m, tol: *tol };
            (commands::table(*kind, &params)?, common)
        }
    };
    emit(&rec, common)?;
    match mismatch(&rec) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// The error a finished `check` report turns into, if any row disagreed.
fn mismatch(rec: &OutputRecord) -> Option<CliError> {
    if rec.status != "mismatch" {
        return None;
    }
    let at = rec
        .params
        .iter()
        .find(|(k, _)| *k == "mismatched")
        .and_then(|(_, v)| match v {
            output::Cell::Text(t) => Some(t.clone()),
            _ => None,
        })
        .unwrap_or_default();
    Some(CliError::Mismatch(at))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not failures
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // the reader went away, as with `| head`
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("specalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use output::Cell;

    #[test]
    fn mismatch_exits_with_five() {
        let mut rec = OutputRecord::new("check", Some("X".into()), 3, vec!["n"]);
        assert!(mismatch(&rec).is_none());
        rec.status = "mismatch";
        rec.params.push(("mismatched", Cell::Text("2,3".into())));
        let e = mismatch(&rec).unwrap();
        assert_eq!(e.exit_code(), 5);
        assert_eq!(e.to_string(), "evaluator and oracle disagree at n = 2,3");
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            CliError::Parse(specalc_core::dsl::parse_expr("(").unwrap_err(), String::new()).exit_code(),
            CliError::Precondition(String::new()).exit_code(),
            CliError::ScaleLimit(String::new()).exit_code(),
            CliError::Mismatch(String::new()).exit_code(),
            CliError::Other(String::new()).exit_code(),
        ];
        assert_eq!(codes, [2, 3, 4, 5, 1]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
