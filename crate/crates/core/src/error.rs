use thiserror::Error;

/// Errors raised by the propagation library.
#[derive(Debug, Error)]
pub enum Error {
    /// Two operands were defined over a different number of Majorana modes.
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A string touches a mode outside `0..n_modes`.
    #[error("string {mask} does not fit in {n_modes} Majorana modes")]
    ModeOutOfRange { mask: String, n_modes: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hamiltonian validation failed: {0}")]
    Validation(String),

    /// The stored polynomial grew past the configured term cap.
    #[error("term cap exceeded: {terms} stored terms > cap {cap}")]
    TermCapExceeded { terms: usize, cap: usize },

    /// A dense computation was requested above the configured size cap.
    #[error("dense oracle limited to {cap} Majorana modes, got {n_modes}")]
    OracleCap { n_modes: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_modes(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::ModeMismatch { left, right });
    }
    Ok(())
}
