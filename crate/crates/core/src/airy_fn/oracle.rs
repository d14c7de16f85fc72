//! Real-axis evaluation of the half-line cosine integrals, independent of the
//! contour engine: blocks between consecutive zeros of the cosine, summed
//! with the Euler transform. Slower and less accurate than the rotated
//! contours; used to cross-check them.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::quadrature::oscillatory::{block_sum, solve_increasing, BlockOptions, TailResult};

/// `∫_0^∞ cos(a t^q + b t + c) dt` for `q ≥ 2`, `a > 0`.
pub fn real_axis_cosine(q: u32, a: f64, b: f64, c: f64, tol: f64) -> Result<TailResult> {
    if q < 2 || !(a > 0.0) {
        return domain("real-axis oracle needs q ≥ 2 and a > 0");
    }
    let qf = q as f64;
    let psi = move |t: f64| a * t.powi(q as i32) + b * t + c;
    let dpsi = move |t: f64| qf * a * t.powi(q as i32 - 1) + b;
    let turning = if b < 0.0 {
        (-b / (qf * a)).powf(1.0 / (qf - 1.0))
    } else {
        0.0
    };
    let floor = psi(0.0).max(psi(turning));
    let first_level = ((floor / PI).floor() + 2.5) * PI;
    let mut last = turning;
    let points = move |k: usize| -> Result<f64> {
        let level = first_level + k as f64 * PI;
        let t = solve_increasing(psi, dpsi, level, last, last + 1.0);
        last = t;
        Ok(t)
    };
    let opts = BlockOptions {
        tol,
        ..BlockOptions::default()
    };
    block_sum(|t| psi(t).cos(), 0.0, points, opts)
}

/// `Ai^(q)(x) = (1/π) ∫_0^∞ cos(t^q/q + x t) dt` on the real axis.
pub fn real_axis_generalized(q: u32, x: f64, tol: f64) -> Result<f64> {
    Ok(real_axis_cosine(q, 1.0 / q as f64, x, 0.0, tol * PI)?.value / PI)
}

/// `W(x) = ∫_0^∞ cos(t⁴ + 4xt + 2x²) dt` on the real axis.
pub fn real_axis_watson(x: f64, tol: f64) -> Result<f64> {
    Ok(real_axis_cosine(4, 1.0, 4.0 * x, 2.0 * x * x, tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_quartic_at_origin() {
        let want = 0.906_402_477_055_477 * (PI / 8.0).cos();
        let r = real_axis_cosine(4, 1.0, 0.0, 0.0, 1e-11).unwrap();
        assert!((r.value - want).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn airy_on_real_axis() {
        let v = real_axis_generalized(3, 1.0, 1e-11).unwrap();
        assert!((v - 0.135_292_416_312_881_4).abs() < 1e-9, "{v}");
        let v = real_axis_generalized(3, -2.0, 1e-11).unwrap();
        assert!((v - 0.227_407_428_201_685_6).abs() < 1e-9, "{v}");
    }
}
