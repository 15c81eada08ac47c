//! `maxsub`: build monoids, list and verify their maximal subsemigroups, and
//! sweep the count table.
//!
//! Exit codes: 0 all verified, 1 usage or internal error, 2 capacity skips
//! present, 3 verification mismatch.

mod commands;
mod config;
mod render;
mod report;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};
use maxsub::Error;

fn main() -> ExitCode {
    // Usage errors exit 1 so that 2 keeps meaning capacity skips.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let config = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(t) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let report = match commands::run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::Capacity { .. }) { 2 } else { 1 };
            return ExitCode::from(code);
        }
    };
    let written = render::render(&report, config.format).and_then(|b| render::write(&b, config.output.as_deref()));
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.status().exit_code())
}
