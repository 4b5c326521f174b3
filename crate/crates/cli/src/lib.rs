//! Instance parsing, command dispatch and deterministic reports for the
//! `homlts` command-line tool.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;
pub mod syntax;

use std::path::Path;

pub use commands::{execute, Command, Options, Outcome};
pub use error::{CliError, CliResult};
pub use instance::{parse_instance, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// What the binary prints: the rendered report on stdout, or an error
/// message on stderr, plus the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Parses `text` and runs `command`; `file_label` is echoed in the report.
pub fn run_text(
    text: &str,
    file_label: &str,
    command: Command,
    opts: &Options,
    format: Format,
) -> CliResult<(String, i32)> {
    let inst = parse_instance(text, opts.max_tensor_entries)?;
    let outcome = execute(&inst, file_label, command, opts)?;
    let rendered = match format {
        Format::Text => report::render_text(&outcome.report),
        Format::Json => report::render_json(&outcome.report),
    };
    Ok((rendered, outcome.exit_code))
}

/// Reads the instance at `path` and runs `command` on it.
pub fn run_file(path: &Path, command: Command, opts: &Options, format: Format) -> RunOutput {
    let label = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let result = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
        .and_then(|text| run_text(&text, &label, command, opts, format));
    match result {
        Ok((stdout, exit_code)) => RunOutput {
            stdout,
            stderr: String::new(),
            exit_code,
        },
        Err(e) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: e.exit_code(),
        },
    }
}
