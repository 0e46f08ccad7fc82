use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qess_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("invalid game file {path}: {message}")]
    GameFile { path: PathBuf, message: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("failed to encode output: {0}")]
    Encode(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 success, 1 numeric failure, 2 invalid input, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qess_core::Error::Numeric(_)) | CliError::Encode(_) => 1,
            CliError::Core(_) | CliError::Usage(_) | CliError::GameFile { .. } => 2,
            CliError::Read { .. } | CliError::Write { .. } => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        let numeric = CliError::from(qess_core::Error::Numeric("x".into()));
        let domain = CliError::from(qess_core::Error::Domain {
            name: "b2",
            value: 2.0,
            range: "[0, 1]",
        });
        let io = CliError::Write {
            path: "x".into(),
            source: io::Error::other("denied"),
        };
        assert_eq!(numeric.exit_code(), 1);
        assert_eq!(domain.exit_code(), 2);
        assert_eq!(CliError::usage("bad").exit_code(), 2);
        assert_eq!(io.exit_code(), 3);
    }
}
