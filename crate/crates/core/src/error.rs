use thiserror::Error;

/// Errors surfaced by the exact-algebra engine.
///
/// Report-style operations (`verify_*`) do not error on failed checks; a failed
/// check is report content. Errors mean the request itself was malformed or an
/// internal structural guarantee broke.
#[derive(Debug, Error)]
pub enum Error {
    #[error("closure failure: [b{i}, b{j}] is not in the span of the basis")]
    Closure { i: usize, j: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("structural invariant violated: {0}")]
    Structure(String),

    #[error("element outside the required domain: {0}")]
    Domain(String),

    #[error("inputs reference different contexts: {0}")]
    Mismatch(String),

    #[error("eigenvalue is not an integer multiple of i: {0}")]
    NonIntegralWeight(String),

    #[error("conjugating element is not invertible")]
    SingularConjugator,

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("operation needs a matrix realization of the algebra '{0}'")]
    NoRealization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
