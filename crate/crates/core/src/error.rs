use thiserror::Error;

/// Errors reported by the library.
///
/// `InvalidParameter` marks contract violations in the inputs,
/// `Computation` marks runtime failures (non-convergence, non-finite
/// intermediates), and `DerivativeUndefined` is the explicit surface of
/// the "no derivative off the set" branch of the F^alpha-derivative.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("computation failed: {0}")]
    Computation(String),

    #[error("F^alpha-derivative undefined at x = {x}: staircase increment {increment:e} below threshold")]
    DerivativeUndefined { x: f64, increment: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
