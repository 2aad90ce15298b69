use thiserror::Error;

use crate::lattice::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("classes live on different lattices")]
    LatticeMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("singular linear system")]
    SingularSystem,

    /// Declared cone or contraction data is inconsistent (for example a
    /// support whose Gram matrix is not negative definite).
    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("class is not pseudo-effective: {reason}")]
    NotPseudoEffective { reason: String, witness: Option<String> },

    #[error("origin class is not nef and big: {0}")]
    NotBig(String),

    #[error("volume threshold is irrational on [{t_lo}, ..): discriminant {discriminant}")]
    IrrationalThreshold { t_lo: Box<Rational>, discriminant: Box<Rational> },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unknown fixture `{id}`; available: {}", .available.join(", "))]
    UnknownFixture { id: String, available: Vec<String> },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by malformed user input rather than by the
    /// engine failing on well-formed data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Schema { .. }
                | Error::Io { .. }
                | Error::UnknownFixture { .. }
                | Error::UnknownName(_)
                | Error::OutOfRange(_)
                | Error::Dimension { .. }
        )
    }
}
