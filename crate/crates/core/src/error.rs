use std::path::PathBuf;

/// Errors for invalid inputs and refused computations.
///
/// Violations of internal exactness invariants (a division that must be exact
/// leaving a remainder) are implementation bugs and panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },

    #[error("{what} = {got} exceeds the supported cap {max}: {detail}")]
    TooLarge {
        what: &'static str,
        max: u64,
        got: u64,
        detail: String,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("index {n} is outside the computed range 0..={n_max}")]
    OutOfRange { n: usize, n_max: usize },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("checkpoint file {path}: {detail}")]
    Checkpoint { path: PathBuf, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
