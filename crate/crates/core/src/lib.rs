//! Higher-order Hermite polynomials, generalized Airy and Watson functions,
//! Airy-type integral transforms and exact spectral propagators.

pub mod airy_fn;
pub mod cli;
pub mod config;
pub mod error;
pub mod evolution;
pub mod hermite_poly;
pub mod quadrature;
pub mod transforms;

pub use config::QuadratureConfig;
pub use error::{Error, Result};
