use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Architecture / depth / sample-count combination that cannot be run.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Kraus set fails the completeness check.
    #[error("channel is not trace preserving (residual {residual:e})")]
    NotTracePreserving { residual: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input lies outside the range where the requested quantity is defined.
    #[error("out of scope: {0}")]
    Scope(String),

    /// A solver ran but could not produce an answer (unbracketed target, no crossing).
    #[error("solver diagnostic: {0}")]
    Diagnostic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Diagnostic(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
