//! Command-line front end: parses a group description, runs the pipeline
//! from `hitchin-core` and prints a text or JSON report.

pub mod report;
pub mod spec;
pub mod sweep;

use std::io::Write;

use thiserror::Error;

pub use report::{run, Report};
pub use spec::{parse_spec, Command, Format, RunSpec, SweepSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Clap(clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("invalid genus {0}: genus must be ≥ 2")]
    Genus(u32),
    #[error("lattice file {path}: {message}")]
    LatticeFile { path: String, message: String },
    #[error("config file {path}, line {line}: {message}")]
    Config { path: String, line: usize, message: String },
    #[error("verification failed:\n{0}")]
    Verification(String),
    #[error("computation failed: {0}")]
    Core(#[from] hitchin_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) => 2,
            CliError::InvalidType(_) => 3,
            CliError::Genus(_) => 4,
            CliError::LatticeFile { .. } => 5,
            CliError::Config { .. } => 6,
            CliError::Verification(_) => 7,
            CliError::Core(_) => 8,
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

fn fail(out: &mut dyn Write, err: &mut dyn Write, e: &CliError) -> i32 {
    match e {
        CliError::Clap(c) if !c.use_stderr() => {
            let _ = write!(out, "{}", c.render());
        }
        CliError::Clap(c) => {
            let _ = write!(err, "{}", c.render());
        }
        _ => {
            let _ = writeln!(err, "error: {e}");
        }
    }
    e.exit_code()
}

/// Runs the command line `argv` and returns the process exit code.
pub fn execute<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let command = match parse_spec(argv) {
        Ok(c) => c,
        Err(e) => return fail(out, err, &e),
    };
    match command {
        Command::Run(spec) => match run(&spec) {
            Ok(report) => {
                let _ = out.write_all(render(&report, spec.output_format).as_bytes());
                0
            }
            Err(e) => fail(out, err, &e),
        },
        Command::Sweep(sweep) => {
            let results = match sweep::run_sweep(&sweep) {
                Ok(r) => r,
                Err(e) => return fail(out, err, &e),
            };
            let mut code = 0;
            for (i, result) in results.iter().enumerate() {
                match result {
                    Ok(report) => {
                        if sweep.output_format == Format::Text && i > 0 {
                            let _ = writeln!(out);
                        }
                        let _ = out.write_all(render(report, sweep.output_format).as_bytes());
                    }
                    Err(e) => {
                        let c = fail(out, err, e);
                        if code == 0 {
                            code = c;
                        }
                    }
                }
            }
            code
        }
    }
}
