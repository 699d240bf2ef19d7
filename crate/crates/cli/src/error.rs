use std::path::Path;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const GUARD: u8 = 3;
    pub const ORACLE: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    /// A failure tied to one input line.
    #[error("{path}:{line}: {source}")]
    AtLine {
        path: String,
        line: usize,
        source: qpe_core::Error,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("{0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Core(#[from] qpe_core::Error),

    #[error("oracle check failed: max deviation {0:e} exceeds tolerance")]
    OracleFailed(f64),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            context: path.display().to_string(),
            source,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::PARSE,
            CliError::AtLine { source, .. } | CliError::Core(source) => match source {
                qpe_core::Error::Graph6 { .. } => exit::PARSE,
                qpe_core::Error::ResourceLimit { .. } => exit::GUARD,
                _ => exit::OTHER,
            },
            CliError::OracleFailed(_) => exit::ORACLE,
            CliError::Usage(_) | CliError::Io { .. } => exit::OTHER,
        }
    }
}

/// Accumulates per-graph failures so a batch can finish before exiting.
/// A parse failure outranks a guard violation, which outranks anything else.
#[derive(Debug, Default)]
pub struct Status {
    parse: bool,
    guard: bool,
    other: bool,
}

impl Status {
    pub fn record(&mut self, e: &CliError) {
        eprintln!("qpe: {e}");
        match e.code() {
            exit::PARSE => self.parse = true,
            exit::GUARD => self.guard = true,
            _ => self.other = true,
        }
    }

    pub fn code(&self) -> u8 {
        if self.parse {
            exit::PARSE
        } else if self.guard {
            exit::GUARD
        } else if self.other {
            exit::OTHER
        } else {
            exit::OK
        }
    }
}
