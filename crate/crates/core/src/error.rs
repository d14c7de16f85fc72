use thiserror::Error;

/// Errors shared by every numerical routine in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive refinement exhausted its node budget above the requested tolerance.
    #[error("no convergence in {context}: estimated error {est_error:e} above tolerance {tol:e} after {nodes} nodes")]
    NonConvergence {
        context: String,
        est_error: f64,
        tol: f64,
        nodes: usize,
    },

    /// A spectral multiplier would amplify some Fourier mode.
    #[error("unstable propagator: |multiplier| = {max_gain:e} > 1 for m = {m}, y = {y}")]
    Stability { m: u32, y: f64, max_gain: f64 },

    /// Requested expansion order exceeds the stable differentiation order.
    #[error("degree {requested} exceeds the supported maximum {max}")]
    DegreeTooHigh { requested: usize, max: usize },

    /// Observables of a state with vanishing norm are undefined.
    #[error("state norm {0:e} is too small for normalized observables")]
    ZeroNorm(f64),

    /// Malformed serialized data.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
