use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The instance is outside the size envelope an exhaustive routine supports.
    #[error("envelope exceeded: {0}")]
    Envelope(String),

    /// A search ran out of its node budget before reaching a verdict.
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    /// A computed object failed its own verification.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn envelope(msg: impl Into<String>) -> Self {
        Error::Envelope(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// Wraps the error with the name of the pipeline stage that produced it.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Strips stage tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// `true` for "too big" and "malformed" errors, as opposed to wrong results.
    pub fn is_usage(&self) -> bool {
        matches!(
            self.root(),
            Error::InvalidInput(_)
                | Error::Envelope(_)
                | Error::BudgetExceeded(_)
                | Error::Parse { .. }
                | Error::Io(_)
        )
    }
}
