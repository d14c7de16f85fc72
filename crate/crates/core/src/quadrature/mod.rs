//! Quadrature building blocks shared by the special functions and the
//! transforms.

pub mod contour;
pub mod euler;
pub mod gauss_kronrod;
pub mod oscillatory;

pub use gauss_kronrod::{integrate, integrate_breaks, integrate_real, GkResult, Tolerance};
