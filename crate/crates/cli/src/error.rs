use thiserror::Error;

/// Failures that stop a command before it can report a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("guard refused: {0}")]
    Guard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for usage errors, 3 for guard refusals.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Guard(_) => 3,
            _ => 2,
        }
    }
}

impl From<lahnet::Error> for CliError {
    fn from(e: lahnet::Error) -> Self {
        if e.is_guard() {
            CliError::Guard(format!("{e} (rerun with --force or LGV_GUARD_OVERRIDE=1)"))
        } else {
            CliError::Usage(e.to_string())
        }
    }
}
