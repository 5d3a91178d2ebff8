//! `sbo`: build, verify and classify conformal symmetry breaking operators
//! between differential forms.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
//! specification error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use sbo_core::SboError;

use args::Cli;

/// Failures split by exit code.
pub enum Failure {
    /// A check ran and did not hold (exit 1).
    Math(String),
    /// Bad input or an inadmissible request (exit 2).
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<SboError>() {
            Some(SboError::PhaseMismatch(_)) | Some(SboError::SignUndetermined(_)) => {
                Failure::Math(format!("{e:#}"))
            }
            _ => Failure::Usage(e),
        }
    }
}

impl From<SboError> for Failure {
    fn from(e: SboError) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

/// Exits quietly when stdout is closed early (e.g. piped into `head`).
fn quiet_broken_pipe() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let msg = info
            .payload()
            .downcast_ref::<String>()
            .map(String::as_str)
            .or_else(|| info.payload().downcast_ref::<&str>().copied())
            .unwrap_or("");
        if msg.contains("Broken pipe") {
            std::process::exit(0);
        }
        default(info);
    }));
}

fn main() -> ExitCode {
    quiet_broken_pipe();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
