use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BOUND_VIOLATION: i32 = 3;
pub const EXIT_TERM_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{0} bound check(s) failed")]
    BoundViolation(usize),

    #[error("{context}: {source}")]
    TermCap { context: String, source: majprop::Error },

    #[error(transparent)]
    Core(#[from] majprop::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::BoundViolation(_) => EXIT_BOUND_VIOLATION,
            Self::TermCap { .. } => EXIT_TERM_CAP,
            Self::Core(majprop::Error::TermCapExceeded { .. }) => EXIT_TERM_CAP,
            Self::Core(majprop::Error::Json(_) | majprop::Error::Parse { .. } | majprop::Error::Validation(_)) => {
                EXIT_CONFIG
            }
            _ => EXIT_FAILURE,
        }
    }

    /// Attach context to term-cap aborts; other errors pass through.
    pub fn during(context: impl Into<String>) -> impl FnOnce(majprop::Error) -> CliError {
        let context = context.into();
        move |e| match e {
            majprop::Error::TermCapExceeded { .. } => CliError::TermCap { context, source: e },
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
