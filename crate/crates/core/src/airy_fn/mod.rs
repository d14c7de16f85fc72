//! Airy-type functions defined by oscillatory integrals:
//!
//! * `Ai(t) = (1/2π) ∫ exp(i(ξ³/3 + tξ)) dξ`
//! * `Ai(x, y) = (1/2π) ∫ exp(i(y t³ + x t)) dt`, `y > 0`
//! * `Ai^(q)(x) = (1/2π) ∫ exp(i(t^q/q + x t)) dt`, odd `q ≥ 3`
//! * `Ai^(q)(x, y) = (1/2π) ∫ exp(i(y t^q + x t)) dt`, `y > 0`
//! * Watson's `W(x) = ∫_0^∞ cos(t⁴ + 4xt + 2x²) dt`
//!
//! All of them go through the contour engine in [`crate::quadrature::contour`].
//! Derivatives in `x` are taken under the integral sign: each `∂_x` inserts a
//! factor `i t`, which stays absolutely integrable on the rotated rays.

mod oracle;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::config::QuadratureConfig;
use crate::error::{domain, Result};
use crate::quadrature::contour::{integrate_contour, Contour, ContourValue, Phase};

pub use oracle::{real_axis_cosine, real_axis_generalized, real_axis_watson};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Parameters of `(1/2π) ∫ exp(i(a t^q + x t)) dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorySpec {
    q: u32,
    a: f64,
    x: f64,
}

impl OscillatorySpec {
    pub fn new(q: u32, a: f64, x: f64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return domain(format!("phase power q = {q} must be odd and at least 3"));
        }
        if !(a > 0.0 && a.is_finite()) {
            return domain(format!("phase coefficient {a} must be positive"));
        }
        if !x.is_finite() {
            return domain("x must be finite");
        }
        Ok(Self { q, a, x })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    fn phase(&self) -> Phase {
        Phase::new(self.q, self.a, self.x)
    }
}

/// A real function value with the quadrature's error estimate. `imag` is the
/// imaginary part left over by the complex contour sum; the exact value is
/// real, so it is a direct measure of the numerical noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionValue {
    pub value: f64,
    pub est_error: f64,
    pub imag: f64,
}

impl FunctionValue {
    fn from_contour(v: ContourValue, scale: f64) -> Self {
        Self {
            value: v.value.re * scale,
            est_error: v.error * scale.abs(),
            imag: v.value.im * scale,
        }
    }
}

fn moment_weight(k: u32) -> impl Fn(Complex64) -> Complex64 {
    move |t| (I * t).powu(k)
}

/// `∂_x^k` of `(1/2π) ∫ exp(i(a t^q + x t)) dt`.
pub fn oscillatory_derivative(spec: &OscillatorySpec, k: u32, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    cfg.validate()?;
    let phase = spec.phase();
    let contour = Contour::real_line(&phase, cfg.angle_for(spec.q)?);
    let ctx = format!("Ai^({}) derivative {k} at x = {}, a = {}", spec.q, spec.x, spec.a);
    let v = integrate_contour(&phase, moment_weight(k), &contour, cfg, &ctx)?;
    Ok(FunctionValue::from_contour(v, 1.0 / (2.0 * PI)))
}

/// `k`-th derivative of the first-sector solution
/// `A_0(x) = (1/2π) ∫_{C_0} exp(i(t^q/q + x t)) dt`, where `C_0` joins the
/// decay sector around `5π/(2q)` to the one around `π/(2q)`. For `q = 3`
/// this is `Ai` itself; for larger `q` it is complex. Only `x ≥ 0` is
/// supported; `A_0` decays super-exponentially there.
pub fn first_sector_derivative(q: u32, x: f64, k: u32, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    cfg.validate()?;
    let spec = OscillatorySpec::new(q, 1.0 / q as f64, x)?;
    if x < 0.0 {
        return domain(format!("first-sector kernel needs x ≥ 0, got {x}"));
    }
    let phase = spec.phase();
    let contour = Contour::first_sector(&phase, cfg.angle_for(q)?)?;
    let ctx = format!("first-sector kernel q = {q} at x = {x}");
    let v = integrate_contour(&phase, moment_weight(k), &contour, cfg, &ctx)?;
    Ok((v.value / (2.0 * PI), v.error / (2.0 * PI)))
}

pub fn airy(t: f64, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    airy_derivative(t, 0, cfg)
}

/// `Ai^{(k)}(t)` by differentiation under the integral.
pub fn airy_derivative(t: f64, k: u32, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    oscillatory_derivative(&OscillatorySpec::new(3, 1.0 / 3.0, t)?, k, cfg)
}

pub fn airy_two_var(x: f64, y: f64, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    airy_generalized_two_var_derivative(3, x, y, 0, cfg)
}

pub fn airy_generalized(q: u32, x: f64, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    oscillatory_derivative(&OscillatorySpec::new(q, 1.0 / q as f64, x)?, 0, cfg)
}

pub fn airy_generalized_derivative(q: u32, x: f64, k: u32, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    oscillatory_derivative(&OscillatorySpec::new(q, 1.0 / q as f64, x)?, k, cfg)
}

pub fn airy_generalized_two_var(q: u32, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    airy_generalized_two_var_derivative(q, x, y, 0, cfg)
}

pub fn airy_generalized_two_var_derivative(q: u32, x: f64, y: f64, k: u32, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    if !(y > 0.0) {
        return domain(format!("two-variable Airy function needs y > 0, got {y}"));
    }
    oscillatory_derivative(&OscillatorySpec::new(q, y, x)?, k, cfg)
}

/// Half-line moments `∫_0^∞ t^k exp(i(t⁴ + 4xt)) dt` for `k = 0, 1, 2`,
/// on the ray `arg t = π/8` where `i t⁴ = -s⁴`. Closing the sector
/// `0 < arg t < π/8` at infinity costs nothing because `Im t⁴ > 0` there.
fn watson_moments(x: f64, count: usize, cfg: &QuadratureConfig) -> Result<Vec<ContourValue>> {
    cfg.validate()?;
    if !x.is_finite() {
        return domain("x must be finite");
    }
    let phase = Phase::new(4, 1.0, 4.0 * x);
    let angle = match cfg.rotation_angle {
        None => PI / 8.0,
        Some(_) => cfg.angle_for(4)?,
    };
    let contour = Contour::half_line(&phase, angle);
    (0..count as u32)
        .map(|k| {
            let ctx = format!("Watson moment {k} at x = {x}");
            integrate_contour(&phase, move |t| t.powu(k), &contour, cfg, &ctx)
        })
        .collect()
}

/// `W(x)`, `W'(x)`, `W''(x)` from the half-line moments.
pub fn watson_with_derivatives(x: f64, cfg: &QuadratureConfig) -> Result<[FunctionValue; 3]> {
    let m = watson_moments(x, 3, cfg)?;
    let (m0, m1, m2) = (m[0], m[1], m[2]);
    let rot = Complex64::from_polar(1.0, 2.0 * x * x);
    let err = m0.error.max(m1.error).max(m2.error);
    // φ = t⁴ + 4xt + 2x²: ∂_x φ = 4(t + x), ∂_x² φ = 4
    let w = rot * m0.value;
    let dw = rot * I * 4.0 * (m1.value + x * m0.value);
    let d2w = rot * (4.0 * I * m0.value - 16.0 * (m2.value + 2.0 * x * m1.value + x * x * m0.value));
    let fv = |z: Complex64, scale: f64| FunctionValue {
        value: z.re,
        est_error: err * scale,
        imag: 0.0,
    };
    let s = 1.0 + 4.0 * x.abs();
    Ok([fv(w, 1.0), fv(dw, 4.0 * s), fv(d2w, 16.0 * s * s)])
}

pub fn watson_w(x: f64, cfg: &QuadratureConfig) -> Result<FunctionValue> {
    let m0 = watson_moments(x, 1, cfg)?[0];
    let z = Complex64::from_polar(1.0, 2.0 * x * x) * m0.value;
    Ok(FunctionValue {
        value: z.re,
        est_error: m0.error,
        imag: 0.0,
    })
}

/// How derivatives entering an ODE residual are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivative {
    /// Differentiate under the integral sign (quadrature accuracy).
    UnderIntegral,
    /// Centered finite difference with step `h`.
    FiniteDifference(f64),
}

/// Centered difference of even order `n`:
/// `h^{-n} Σ_j (-1)^j C(n, j) f(x + (n/2 - j) h)`.
pub fn centered_difference<F>(f: F, x: f64, n: u32, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if n % 2 != 0 {
        return domain(format!("centered difference needs an even order, got {n}"));
    }
    if !(h > 0.0) {
        return domain(format!("step h = {h} must be positive"));
    }
    let half = (n / 2) as f64;
    let mut binom = 1.0;
    let mut acc = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f(x + (half - j as f64) * h)?;
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    Ok(acc / h.powi(n as i32))
}

/// `|3y ∂_x² Ai(x,y) − x Ai(x,y)|`.
pub fn ode_residual_airy_two_var(x: f64, y: f64, method: Derivative, cfg: &QuadratureConfig) -> Result<f64> {
    let value = airy_two_var(x, y, cfg)?.value;
    let second = match method {
        Derivative::UnderIntegral => airy_generalized_two_var_derivative(3, x, y, 2, cfg)?.value,
        Derivative::FiniteDifference(h) => centered_difference(|s| Ok(airy_two_var(s, y, cfg)?.value), x, 2, h)?,
    };
    Ok((3.0 * y * second - x * value).abs())
}

/// Sign of the `x` term in the ODE of `Ai^(2p+1)`: integrating
/// `∫ (t^{2p} + x) e^{iφ} dt = 0` by parts gives
/// `∂_x^{2p} Ai^(q) = (-1)^{p+1} x Ai^(q)`, so the residual is
/// `∂_x^{2p} Ai^(q) + (-1)^p x Ai^(q)`.
pub fn generalized_ode_sign(q: u32) -> f64 {
    let p = (q - 1) / 2;
    if p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `|∂_x^{2p} Ai^(q)(x) + (-1)^p x Ai^(q)(x)|` with `q = 2p + 1`.
pub fn ode_residual_generalized(q: u32, x: f64, method: Derivative, cfg: &QuadratureConfig) -> Result<f64> {
    let order = q - 1;
    let value = airy_generalized(q, x, cfg)?.value;
    let high = match method {
        Derivative::UnderIntegral => airy_generalized_derivative(q, x, order, cfg)?.value,
        Derivative::FiniteDifference(h) => centered_difference(|s| Ok(airy_generalized(q, s, cfg)?.value), x, order, h)?,
    };
    Ok((high + generalized_ode_sign(q) * x * value).abs())
}

/// `|W''(x) + 4x² W(x)|`.
pub fn ode_residual_watson(x: f64, method: Derivative, cfg: &QuadratureConfig) -> Result<f64> {
    let (w, second) = match method {
        Derivative::UnderIntegral => {
            let [w, _, d2] = watson_with_derivatives(x, cfg)?;
            (w.value, d2.value)
        }
        Derivative::FiniteDifference(h) => (
            watson_w(x, cfg)?.value,
            centered_difference(|s| Ok(watson_w(s, cfg)?.value), x, 2, h)?,
        ),
    };
    Ok((second + 4.0 * x * x * w).abs())
}
