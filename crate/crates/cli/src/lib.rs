//! Command-line front end: argument parsing, `--config` merging and output
//! encoding. Every computation is delegated to `rsk_core`.

pub mod args;
pub mod commands;
pub mod config;
pub mod render;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use args::{Cli, Format};
pub use commands::{execute, CsvRow, Outcome, ResultRecord};
pub use render::render_diagram;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    TooLarge(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::TooLarge(_) => 3,
        }
    }
}

impl From<rsk_core::Error> for CliError {
    fn from(e: rsk_core::Error) -> Self {
        match e {
            rsk_core::Error::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Invocation {
    fn failure(e: CliError) -> Self {
        Invocation { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn encode(cli: &Cli, out: Outcome) -> Result<String, CliError> {
    let json_err = |e: serde_json::Error| CliError::Validation(format!("encoding failed: {e}"));
    if cli.jsonl {
        let mut text = String::new();
        if let Some((_, lines)) = &out.rows {
            for line in lines {
                text.push_str(&serde_json::to_string(line).map_err(json_err)?);
                text.push('\n');
            }
        }
        text.push_str(&serde_json::to_string(&out.record).map_err(json_err)?);
        text.push('\n');
        return Ok(text);
    }
    match cli.format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.record).map_err(json_err)? + "\n"),
        Format::Ascii => Ok(out.ascii + "\n"),
        Format::Csv => {
            let Some((rows, _)) = out.rows else {
                return Err(CliError::Validation(
                    "csv output is only available for walk and transposition searches".into(),
                ));
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| CliError::Validation(format!("csv: {e}")))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Validation(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}

/// Runs the program on `argv` (including the program name).
pub fn run(argv: Vec<String>) -> Invocation {
    let argv = match config::merge_config(argv, &Cli::command()) {
        Ok(a) => a,
        Err(e) => return Invocation::failure(e),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Invocation { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Invocation { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => return Invocation::failure(e),
    };
    let code = if out.failed { 2 } else { 0 };
    match encode(&cli, out) {
        Ok(stdout) => Invocation { code, stdout, stderr: String::new() },
        Err(e) => Invocation::failure(e),
    }
}
