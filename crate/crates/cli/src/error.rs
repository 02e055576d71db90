use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] rootscope_core::Error),

    #[error("solver failed at n = {n}: {message}")]
    Solver { n: u32, message: String },

    #[error("{count} theorem check(s) failed")]
    Violations { count: usize },

    #[error("output error: {0}")]
    Io(#[from] std::io::Error),

    #[error("output error: {0}")]
    Csv(#[from] csv::Error),

    #[error("output error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for bad arguments, 2 when no complete certified root set could be
    /// produced, 3 when a theorem check failed.
    pub fn exit_code(&self) -> i32 {
        use rootscope_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Core(E::Domain(_)) => 1,
            CliError::Core(
                E::IncompleteRootSet { .. } | E::Convergence { .. } | E::ClassificationMismatch { .. },
            ) => 2,
            CliError::Violations { .. } | CliError::Core(E::MappingViolation { .. }) => 3,
            CliError::Core(E::Overflow(_)) | CliError::Solver { .. } => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}
