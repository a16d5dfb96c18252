use thiserror::Error;

/// Failures that abort a command. Each maps to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] bfl_core::Error),

    #[error("io error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for bad input (config, parse, arity, unknown generator), 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        use bfl_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::Config(_) | E::Parse { .. } | E::Arity { .. } | E::Context(_)) => 2,
            CliError::Core(_) | CliError::Io(_) | CliError::Internal(_) => 3,
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> CliError {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

pub type CliResult<T> = Result<T, CliError>;
