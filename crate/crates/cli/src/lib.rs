//! Command-line front end for `satkit`: graph files, JSON reports and the
//! subcommands behind the `satkit` binary.
//!
//! Exit codes: 0 success, 1 a requested predicate is false, 2 I/O or
//! parameter error, 3 search budget exhausted.

pub mod commands;
pub mod graphfile;
pub mod report;

use std::io::Write;

use clap::Parser;

/// Parses `args`, runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { commands::EXIT_ERROR } else { commands::EXIT_OK };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            commands::EXIT_ERROR
        }
    }
}
