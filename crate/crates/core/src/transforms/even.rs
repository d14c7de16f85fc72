//! Fourier transform of `exp(-x^{2p})`,
//! `ẽ_{2p}(k) = (1/√(2π)) ∫ exp(-x^{2p} - ikx) dx`, tabulated for the even
//! Hermite transform.
//!
//! For large `k` the real-axis integral is a tiny difference of O(1)
//! oscillations. Instead the line is shifted to `x = u - iη`, with `η` the
//! depth of the two saddles of `-x^{2p} - ikx` nearest the real axis, so that
//! the integrand is never much larger than the result's envelope.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::QuadratureConfig;
use crate::error::{domain, Error, Result};
use crate::quadrature::gauss_kronrod::{integrate, integrate_breaks, Tolerance};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Saddle `x_s = ρ e^{-iπ/(2(2p-1))}`, `ρ = (k/2p)^{1/(2p-1)}`, of the
/// exponent, and `Re` of the exponent there (the log-envelope of `ẽ`).
fn saddle(p: u32, k: f64) -> (Complex64, f64) {
    let m = (2 * p - 1) as f64;
    let rho = (k / (2 * p) as f64).powf(1.0 / m);
    let xs = Complex64::from_polar(rho, -PI / (2.0 * m));
    let phi = -xs.powu(2 * p) - I * k * xs;
    (xs, phi.re)
}

/// `ẽ_{2p}(k)` and `ẽ'_{2p}(k)` for `k ≥ 0`.
fn transform_at(p: u32, k: f64, tol: f64, max_evals: usize) -> Result<(f64, f64)> {
    let (xs, env) = saddle(p, k);
    let eta = -xs.im;
    let exponent = |u: f64| {
        let x = Complex64::new(u, -eta);
        -x.powu(2 * p) - I * k * x
    };
    // go out until the integrand is e^{-45} below the envelope
    let mut big_u = xs.re.abs() + 1.0;
    while exponent(big_u).re > env - 45.0 {
        big_u *= 1.25;
    }
    let f = |u: f64| (exponent(u) - env).exp();
    let breaks = [-big_u, -xs.re.abs(), 0.0, xs.re.abs(), big_u];
    let scale = env.exp() / (2.0 * PI).sqrt();
    // the integrand is O(1) after removing the envelope; GK cannot go below ~1e-14 of that.
    // Accuracy is kept relative to the envelope: the moments weight the tail by k^{2j}.
    let t = Tolerance::new((tol / scale).clamp(1e-13, 1e-12), 1e-13);
    let v = integrate_breaks(f, &breaks, t, max_evals);
    let d = integrate_breaks(|u| -I * Complex64::new(u, -eta) * f(u), &breaks, t, max_evals);
    if !(v.converged && d.converged) {
        return Err(Error::NonConvergence {
            context: format!("even kernel p = {p} at k = {k}"),
            est_error: v.error.max(d.error),
            tol,
            nodes: v.evals + d.evals,
        });
    }
    Ok((v.value.re * scale, d.value.re * scale))
}

/// Tabulated `ẽ_{2p}` on `[0, k_max]` with cubic Hermite interpolation;
/// even by construction (`ẽ(-k) = ẽ(k)`), zero beyond `k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenKernel {
    p: u32,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl EvenKernel {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k_max(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn eval(&self, k: f64) -> f64 {
        let k = k.abs();
        let t = k / self.step;
        let i = t.floor() as usize;
        if i + 1 >= self.values.len() {
            return if i + 1 == self.values.len() && t == i as f64 { self.values[i] } else { 0.0 };
        }
        let s = t - i as f64;
        let h = self.step;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * self.values[i]
            + (s3 - 2.0 * s2 + s) * h * self.slopes[i]
            + (-2.0 * s3 + 3.0 * s2) * self.values[i + 1]
            + (s3 - s2) * h * self.slopes[i + 1]
    }

    /// `(1/√(2π)) ∫ ẽ(k) k^{2j} dk` over the tabulated range, piecewise exact
    /// on the interpolant.
    pub fn even_moment(&self, j: u32) -> f64 {
        let n = self.values.len();
        let breaks: Vec<f64> = (0..n).map(|i| i as f64 * self.step).collect();
        let r = integrate_breaks(
            |k| Complex64::new(self.eval(k) * k.powi(2 * j as i32), 0.0),
            &breaks,
            Tolerance::new(0.0, 1e-15),
            30 * n + 15 * n,
        );
        2.0 * r.value.re / (2.0 * PI).sqrt()
    }
}

/// Radius past which `|ẽ_{2p}(k)| k^{degree}` is below `tol·1e-4`.
pub fn kernel_range(p: u32, degree: u32, tol: f64) -> f64 {
    let target = tol.ln() - 9.0;
    let mut k: f64 = 2.0;
    loop {
        let (_, env) = saddle(p, k);
        if env + degree as f64 * k.ln() + k.ln() < target && k > degree as f64 {
            return k;
        }
        k += 0.25;
    }
}

/// Tabulates `ẽ_{2p}` on `[0, k_max]`, halving the step until the cubic
/// interpolant matches direct evaluation at the interval midpoints to
/// `abs_tol/10`.
pub fn even_kernel_build(p: u32, k_max: f64, cfg: &QuadratureConfig) -> Result<EvenKernel> {
    if p < 1 {
        return domain(format!("kernel order p = {p} must be at least 1"));
    }
    if !(k_max > 0.0 && k_max.is_finite()) {
        return domain(format!("k_max = {k_max} must be positive"));
    }
    cfg.validate()?;
    let budget = cfg.abs_tol / 10.0;
    let tol = budget * 1e-2;
    let mut step = 0.1;
    let node = |k: f64| transform_at(p, k, tol, cfg.max_nodes);
    let mut table: Vec<(f64, f64)> = (0..=(k_max / step).ceil() as usize)
        .into_par_iter()
        .map(|i| node(i as f64 * step))
        .collect::<Result<_>>()?;
    loop {
        let kernel = EvenKernel {
            p,
            step,
            values: table.iter().map(|v| v.0).collect(),
            slopes: table.iter().map(|v| v.1).collect(),
        };
        let mids: Vec<(f64, f64)> = (0..table.len() - 1)
            .into_par_iter()
            .map(|i| node((i as f64 + 0.5) * step))
            .collect::<Result<_>>()?;
        let worst = mids
            .iter()
            .enumerate()
            .map(|(i, m)| (kernel.eval((i as f64 + 0.5) * step) - m.0).abs())
            .fold(0.0, f64::max);
        if worst <= budget || step < 1e-4 {
            return Ok(kernel);
        }
        // interleave the midpoints: the refined table costs nothing extra
        let mut refined = Vec::with_capacity(2 * table.len() - 1);
        for (i, v) in table.iter().enumerate() {
            refined.push(*v);
            if let Some(m) = mids.get(i) {
                refined.push(*m);
            }
        }
        table = refined;
        step /= 2.0;
    }
}

/// Direct real-axis value of `ẽ_{2p}(k)` (cross-check for small `k`).
pub fn even_kernel_real_axis(p: u32, k: f64) -> f64 {
    let x_max = (45.0_f64).powf(1.0 / (2 * p) as f64);
    let r = integrate(
        |x| Complex64::new((-x.powi(2 * p as i32)).exp() * (k * x).cos(), 0.0),
        0.0,
        x_max,
        Tolerance::new(1e-15, 1e-14),
        100_000,
    );
    2.0 * r.value.re / (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_self_transform() {
        let c = QuadratureConfig::with_tol(1e-11);
        let kern = even_kernel_build(1, 12.0, &c).unwrap();
        for k in [0.0_f64, 0.33, 1.0, 2.71, 7.5] {
            let want = (-k * k / 4.0).exp() / 2.0_f64.sqrt();
            assert!((kern.eval(k) - want).abs() < 1e-11, "k = {k}");
            assert_eq!(kern.eval(-k), kern.eval(k));
        }
    }

    #[test]
    fn quartic_kernel_at_zero_and_against_real_axis() {
        let c = QuadratureConfig::with_tol(1e-11);
        let kern = even_kernel_build(2, 20.0, &c).unwrap();
        let gamma_5_4 = 0.906_402_477_055_477_f64;
        assert!((kern.eval(0.0) - 2.0 * gamma_5_4 / (2.0 * PI).sqrt()).abs() < 1e-12);
        for k in [0.5, 2.0, 4.5, 9.0] {
            assert!((kern.eval(k) - even_kernel_real_axis(2, k)).abs() < 1e-11, "k = {k}");
        }
    }

    #[test]
    fn shifted_line_is_accurate_where_the_real_axis_cancels() {
        // ẽ_4 at large k is ~1e-9; the shifted line keeps relative accuracy
        let (v, _) = transform_at(2, 40.0, 1e-16, 100_000).unwrap();
        let (v2, _) = transform_at(2, 40.0, 1e-18, 400_000).unwrap();
        assert!((v - v2).abs() < 1e-6 * v.abs());
        assert!(v.abs() < 1e-5);
    }
}
