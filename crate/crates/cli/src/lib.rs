//! The `vcfc` command-line tool: batch solving, verification, constructions,
//! bounds, family generation, regression suites and conjecture checks.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use report::{EXIT_INPUT, EXIT_OK};

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let common = &cli.common;
    let result = match &cli.command {
        Command::Solve => commands::cmd_solve(common, out, err),
        Command::Verify { coloring } => commands::cmd_verify(common, coloring, out, err),
        Command::Construct { name, vertex } => {
            commands::cmd_construct(common, *name, *vertex, out, err)
        }
        Command::Bounds { spanning_tree } => {
            commands::cmd_bounds(common, spanning_tree.as_deref(), out, err)
        }
        Command::Generate { spec } => commands::cmd_generate(common, spec.as_deref(), out),
        Command::Regress {
            max_n,
            samples,
            remark_probe,
        } => commands::cmd_regress(common, *max_n, *samples, *remark_probe, out, err),
        Command::Conjecture => commands::cmd_conjecture(common, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = commands::write_error(err, &e);
            EXIT_INPUT
        }
    }
}
