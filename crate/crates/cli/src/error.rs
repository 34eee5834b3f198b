use rps_conflict::Violation;
use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("body {body:?}: {}", join(.violations))]
    Validation {
        body: String,
        violations: Vec<Violation>,
    },
    #[error("body {body:?}, record {record}: {source}")]
    Record {
        body: String,
        record: usize,
        source: rps_conflict::Error,
    },
    #[error("invalid frame: {0}")]
    Frame(rps_conflict::Error),
    #[error("body name {0:?} used twice")]
    DuplicateBody(String),
    #[error("no body named {0:?}")]
    UnknownBody(String),
    #[error("unknown table {0}; expected one of 2, 3, 4, 5, 6, 7")]
    UnknownTable(u32),
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(rps_conflict::Error),
    #[error("computation failed: {0}")]
    Compute(#[from] rps_conflict::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl CliError {
    /// Process exit status: 2 for malformed or invalid input, 3 for
    /// computation-domain errors, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}
