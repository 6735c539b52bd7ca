//! Process exit contract: 0 success, 1 verification failure, 2 usage
//! error, 3 I/O error.

#[derive(Debug)]
pub enum CliError {
    /// Exit code 1: a verification suite reported failures.
    Failed(String),
    /// Exit code 2: bad arguments or configuration.
    Usage(String),
    /// Exit code 3: filesystem problems.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Failed(m) | CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Io(format!("{e:#}"))
    }
}
