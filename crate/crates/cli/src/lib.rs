//! Command-line front end for `sgfrac`.
//!
//! Exit codes: 0 success, 2 usage, 3 numeric failure, 4 I/O.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
pub mod builtin;
pub mod commands;
pub mod failure;
pub mod points;
pub mod samples;
pub mod table;

use args::{Cli, Command};
use failure::CliResult;

pub fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, stdout),
        Command::Matrix(a) => commands::matrix(a, stdout),
        Command::Apply(a) => commands::apply(a, stdout),
        Command::Sample(a) => commands::sample(a, stdout),
        Command::Sweep(a) => commands::sweep(a, stdout),
        Command::Bench(a) => commands::bench(a, stdout),
        Command::Advise(a) => commands::advise(a, stdout),
        Command::Report(a) => commands::report(a, stdout),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() { write!(stderr, "{}", e.render()) } else { write!(stdout, "{}", e.render()) };
            return e.exit_code();
        }
    };
    match dispatch(&cli, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.code()
        }
    }
}
