//! Integral transforms realizing operator exponentials:
//!
//! * Gauss–Weierstrass: `exp(y∂²) f`, `y > 0`
//! * Airy: `exp(y∂³) f = (3y)^{-1/3} ∫ Ai((ξ - x)/(3y)^{1/3}) f(ξ) dξ`, `y > 0`
//! * even order: `exp(-|y|∂^{2p})` through the Fourier transform of
//!   `exp(-x^{2p})`
//! * odd order: `exp(-|y|∂^{2p+1})` through `Ai^(2p+1)`
//!
//! plus the Airy–Laplace identity `∫ Ai(t) e^{pt} dt = e^{p³/3}` and the
//! expansion of a function in Airy polynomials `H_n^(3)(x, -|y|)`.

mod even;
mod integrand;
mod kernel;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::airy_fn::airy;
use crate::config::QuadratureConfig;
use crate::error::{domain, Error, Result};
use crate::hermite_poly::{hermite_eval, PolyIndex};
use crate::quadrature::gauss_kronrod::{integrate, integrate_breaks, Tolerance};
use crate::quadrature::oscillatory::{block_sum, BlockOptions};

pub use even::{even_kernel_build, even_kernel_real_axis, kernel_range, EvenKernel};
pub use integrand::{Integrand, Sampled};
pub use kernel::Pairing;

use integrand::{poly_derivative, shifted_poly};
use kernel::{direct_pairing, ray_sum, ray_sum_poly, sector_pairing};

/// Highest degree accepted by [`airy_polynomial`].
pub const MAX_AIRY_POLY_DEGREE: u32 = 12;

/// Highest order of [`expansion_coefficients`]: beyond it the `n`-fold
/// differentiated kernel loses too many digits to cancellation.
pub const MAX_EXPANSION_ORDER: usize = 10;

/// A transform together with its (validated) parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformKind {
    GaussWeierstrass { y: f64 },
    Airy { y: f64 },
    EvenHermite { p: u32, yabs: f64 },
    OddHermite { p: u32, yabs: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be positive, got {v}"))
    }
}

fn order(p: u32) -> Result<()> {
    if p >= 1 {
        Ok(())
    } else {
        domain(format!("order p = {p} must be at least 1"))
    }
}

impl TransformKind {
    pub fn gauss_weierstrass(y: f64) -> Result<Self> {
        positive("y", y)?;
        Ok(Self::GaussWeierstrass { y })
    }

    pub fn airy(y: f64) -> Result<Self> {
        positive("y", y)?;
        Ok(Self::Airy { y })
    }

    pub fn even_hermite(p: u32, yabs: f64) -> Result<Self> {
        order(p)?;
        positive("|y|", yabs)?;
        Ok(Self::EvenHermite { p, yabs })
    }

    pub fn odd_hermite(p: u32, yabs: f64) -> Result<Self> {
        order(p)?;
        positive("|y|", yabs)?;
        Ok(Self::OddHermite { p, yabs })
    }

    /// Order `m` of the realized operator `exp(±y ∂^m)`.
    pub fn operator_order(&self) -> u32 {
        match *self {
            Self::GaussWeierstrass { .. } => 2,
            Self::Airy { .. } => 3,
            Self::EvenHermite { p, .. } => 2 * p,
            Self::OddHermite { p, .. } => 2 * p + 1,
        }
    }

    /// Signed `y` of `H_n^(m)(x, y)` that the transform of `ξ^n` produces.
    pub fn hermite_y(&self) -> f64 {
        match *self {
            Self::GaussWeierstrass { y } | Self::Airy { y } => y,
            Self::EvenHermite { yabs, .. } | Self::OddHermite { yabs, .. } => -yabs,
        }
    }

    pub fn apply(&self, f: &Integrand, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
        match *self {
            Self::GaussWeierstrass { y } => gauss_weierstrass(f, x, y),
            Self::Airy { y } => airy_transform(f, x, y, cfg),
            Self::EvenHermite { p, yabs } => {
                let Integrand::Polynomial(c) = f else {
                    return domain("the even-order transform is defined for polynomial inputs only");
                };
                let degree = c.len().saturating_sub(1) as u32;
                let kern = even_kernel_build(p, kernel_range(p, degree, cfg.abs_tol), cfg)?;
                even_transform_poly(&kern, c, x, yabs)
            }
            Self::OddHermite { p, yabs } => odd_transform(p, f, x, yabs, cfg),
        }
    }
}

fn log_poly_bound(c: &[f64], x: f64, s: f64) -> impl Fn(f64) -> f64 + '_ {
    move |r: f64| {
        let z = x.abs() + s.abs() * r;
        let v: f64 = c.iter().rev().fold(0.0, |acc, a| acc * z + a.abs());
        v.max(1e-300).ln()
    }
}

/// `∫ ∂^n Ai^(q)(u) f(x + c u) du`, by the sector route for polynomials and
/// on the real axis for decaying or compactly supported `f`.
fn pairing(q: u32, n: u32, f: &Integrand, x: f64, c: f64, cfg: &QuadratureConfig) -> Result<Pairing> {
    f.validate()?;
    cfg.validate()?;
    let context = format!("Ai^({q}) transform at x = {x}");
    match f {
        Integrand::Polynomial(coeffs) => {
            // move the n derivatives onto f: ∫ A^{(n)}(u) f(x+cu) du = (-c)^n ∫ A(u) f^{(n)}(x+cu) du
            let d = poly_derivative(coeffs, n as usize);
            let factor = (-c).powi(n as i32);
            if d.is_empty() {
                return Ok(Pairing {
                    value: 0.0,
                    error: 0.0,
                    imag: 0.0,
                });
            }
            let sym = ray_sum_poly(q, &shifted_poly(&d, x, c));
            let bound = log_poly_bound(&sym, 0.0, 1.0);
            let h = |r: f64| Complex64::new(sym.iter().rev().fold(0.0, |acc, &a| acc * r + a), 0.0);
            let v = sector_pairing(q, h, &bound, cfg, &context)?;
            Ok(Pairing {
                value: v.value * factor,
                error: v.error * factor.abs(),
                imag: v.imag * factor,
            })
        }
        _ => {
            let (lo, hi) = f.window().expect("non-polynomial integrands have a window");
            let (a, b) = ((lo - x) / c, (hi - x) / c);
            let (u_lo, u_hi) = if a < b { (a, b) } else { (b, a) };
            let knots: Vec<f64> = f.knots().iter().map(|&k| (k - x) / c).collect();
            direct_pairing(q, n, |u| f.eval(x + c * u), u_lo, u_hi, &knots, cfg, &context)
        }
    }
}

/// `(1/(2√(πy))) ∫ f(ξ) exp(-(x - ξ)²/(4y)) dξ`, computed as
/// `(1/√π) ∫ f(x + 2√y v) e^{-v²} dv` over the range where the weight (times
/// the polynomial growth) is not negligible.
pub fn gauss_weierstrass(f: &Integrand, x: f64, y: f64) -> Result<f64> {
    positive("y (the Gauss–Weierstrass transform holds only for y > 0)", y)?;
    f.validate()?;
    let s = 2.0 * y.sqrt();
    let degree = match f {
        Integrand::Polynomial(c) => c.len() as f64,
        _ => 0.0,
    };
    // v^n e^{-v²} peaks at √(n/2); beyond √(n/2) + 7.5 the weight is < 1e-20 of the peak
    let reach = (degree / 2.0).sqrt() + 7.5;
    let (mut lo, mut hi) = (-reach, reach);
    if let Some((a, b)) = f.window() {
        lo = lo.max((a - x) / s);
        hi = hi.min((b - x) / s);
        if lo >= hi {
            return Ok(0.0);
        }
    }
    let mut breaks = vec![lo];
    breaks.extend(f.knots().iter().map(|&k| (k - x) / s).filter(|&v| v > lo && v < hi));
    breaks.push(hi);
    // absolute floor scaled to the integrand's size (the value itself may vanish)
    let size = match f {
        Integrand::Polynomial(c) => log_poly_bound(c, x, s)(reach).exp().max(1.0),
        _ => 1.0,
    };
    let tol = Tolerance::new(1e-14 * size, 1e-13);
    let r = integrate_breaks(|v| Complex64::new(f.eval(x + s * v) * (-v * v).exp(), 0.0), &breaks, tol, 200_000);
    if !r.converged {
        return Err(Error::NonConvergence {
            context: format!("Gauss–Weierstrass transform at x = {x}"),
            est_error: r.error,
            tol: tol.abs,
            nodes: r.evals,
        });
    }
    Ok(r.value.re / PI.sqrt())
}

/// `(3y)^{-1/3} ∫ Ai(-(x - ξ)/(3y)^{1/3}) f(ξ) dξ = ∫ Ai(u) f(x + (3y)^{1/3} u) du`.
///
/// For polynomial `f` the integral converges only conditionally (the kernel
/// oscillates with amplitude `|u|^{-1/4}` as `u → -∞`); it is evaluated by
/// the sector route of the kernel module, whose value is the Abel sum.
pub fn airy_transform(f: &Integrand, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    positive("y", y)?;
    Ok(pairing(3, 0, f, x, (3.0 * y).cbrt(), cfg)?.value)
}

/// Airy transform of `ξ^n`; equals `H_n^(3)(x, y)`.
pub fn airy_polynomial(n: u32, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if n > MAX_AIRY_POLY_DEGREE {
        return Err(Error::DegreeTooHigh {
            requested: n as usize,
            max: MAX_AIRY_POLY_DEGREE as usize,
        });
    }
    airy_transform(&Integrand::monomial(n as usize), x, y, cfg)
}

/// The Airy transform of a polynomial evaluated on the real axis: the
/// decaying side by adaptive quadrature, the oscillatory side in blocks
/// between consecutive zeros of `Ai`, summed with the Euler transform
/// (the block sequence alternates and grows polynomially). Independent of the
/// sector route; slower and limited to moderate degrees.
pub fn airy_transform_blocks(coeffs: &[f64], x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    positive("y", y)?;
    let s = (3.0 * y).cbrt();
    let g = |u: f64| coeffs.iter().rev().fold(0.0, |acc, &a| acc * (x + s * u) + a);
    let bound = log_poly_bound(coeffs, x, s);
    let tail = |u: f64| -(2.0 / 3.0) * u.powf(1.5) + bound(u);
    let mut r_max = 4.0;
    while tail(r_max) > cfg.abs_tol.ln() - 10.0 {
        r_max *= 1.25;
    }
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    };
    real_axis_pairing(g, r_max, &inner, cfg.abs_tol)
}

/// Zeros of `Ai` from the asymptotic expansion `a_k ≈ -T(3π(4k-1)/8)`.
fn airy_zero_estimate(k: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t) - 5.0 / 36.0 / t.powi(4))
}

/// `∫ Ai(u) g(u) du` with the right half cut at `r_max` and the left half
/// summed in blocks.
fn real_axis_pairing(g: impl Fn(f64) -> f64, r_max: f64, cfg: &QuadratureConfig, tol: f64) -> Result<f64> {
    let mut failure = None;
    let mut f = |u: f64| match airy(u, cfg) {
        Ok(v) => v.value * g(u),
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let breaks: Vec<f64> = (0..=r_max.ceil() as usize).map(|i| (i as f64).min(r_max)).collect();
    let right = integrate_breaks(|u| Complex64::new(f(u), 0.0), &breaks, Tolerance::new(tol * 1e-2, 1e-13), 200_000);
    if !right.converged {
        return Err(Error::NonConvergence {
            context: "Airy pairing, decaying side".into(),
            est_error: right.error,
            tol,
            nodes: right.evals,
        });
    }
    let opts = BlockOptions {
        tol,
        ..BlockOptions::default()
    };
    let left = block_sum(&mut f, 0.0, |k| Ok(airy_zero_estimate(k + 1)), opts)?;
    if let Some(e) = failure {
        return Err(e);
    }
    // block_sum integrates from 0 towards -∞
    Ok(right.value.re - left.value)
}

/// `((2p+1)|y|)^{-1/(2p+1)} ∫ Ai^(2p+1)(σ(ξ - x)/((2p+1)|y|)^{1/(2p+1)}) f(ξ) dξ`
/// with `σ = (-1)^p`; for `f = ξ^n` this is `H_n^(2p+1)(x, -|y|)`.
pub fn odd_hermite_transform(p: u32, n: u32, x: f64, yabs: f64, cfg: &QuadratureConfig) -> Result<f64> {
    order(p)?;
    positive("|y|", yabs)?;
    odd_transform(p, &Integrand::monomial(n as usize), x, yabs, cfg)
}

/// Kernel-argument sign of the odd-order transform.
pub fn odd_kernel_sign(p: u32) -> f64 {
    if p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn odd_transform(p: u32, f: &Integrand, x: f64, yabs: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let q = 2 * p + 1;
    let s = (q as f64 * yabs).powf(1.0 / q as f64);
    // substituting v = σ(ξ - x)/s: ∫ Ai^(q)(v) f(x + σ s v) dv
    Ok(pairing(q, 0, f, x, odd_kernel_sign(p) * s, cfg)?.value)
}

/// `Σ_j f^{(2j)}(x)/(2j)! · (-1)^j s^{2j} μ_{2j}`, `s = |y|^{1/(2p)}`: the
/// kernel pairing `(1/√(2π)) ∫ ẽ(k) f(x - iks) dk` with the odd moments of
/// the even kernel dropped (they vanish by symmetry).
fn even_transform_poly(kern: &EvenKernel, coeffs: &[f64], x: f64, yabs: f64) -> Result<f64> {
    positive("|y|", yabs)?;
    let s = yabs.powf(1.0 / (2 * kern.p()) as f64);
    let mut total = 0.0;
    let mut fact = 1.0;
    let mut j2 = 0usize;
    while j2 < coeffs.len() {
        let d = poly_derivative(coeffs, j2);
        let dv: f64 = d.iter().rev().fold(0.0, |acc, &a| acc * x + a);
        let sign = if (j2 / 2) % 2 == 0 { 1.0 } else { -1.0 };
        total += dv / fact * sign * s.powi(j2 as i32) * kern.even_moment((j2 / 2) as u32);
        fact *= ((j2 + 1) * (j2 + 2)) as f64;
        j2 += 2;
    }
    Ok(total)
}

/// `(1/√(2π)) ∫ ẽ_{2p}(k) (x - ik|y|^{1/(2p)})^n dk = H_n^(2p)(x, -|y|)`.
pub fn even_hermite_transform(p: u32, n: u32, x: f64, yabs: f64, cfg: &QuadratureConfig) -> Result<f64> {
    order(p)?;
    positive("|y|", yabs)?;
    let kern = even_kernel_build(p, kernel_range(p, n, cfg.abs_tol), cfg)?;
    even_hermite_with(&kern, n, x, yabs)
}

/// [`even_hermite_transform`] with a prebuilt kernel.
pub fn even_hermite_with(kern: &EvenKernel, n: u32, x: f64, yabs: f64) -> Result<f64> {
    let mut c = vec![0.0; n as usize + 1];
    c[n as usize] = 1.0;
    even_transform_poly(kern, &c, x, yabs)
}

/// Which evaluation the Laplace identity used for its left side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceRoute {
    /// Real axis, oscillatory side summed in blocks with the Euler transform.
    RealAxis,
    /// `e^{pt}` grows on the oscillatory side; sector route.
    Sector,
}

/// `(∫ Ai(t) e^{pt} dt, e^{p³/3})`.
///
/// For `p ≥ 0` the left side is integrated along the real axis with block
/// acceleration on `t → -∞`. For `p < 0` the weight grows exponentially on
/// the oscillatory side and the real-axis integral diverges; its Abel value
/// is obtained by the sector route instead.
pub fn laplace_airy_identity(p: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    Ok(laplace_airy_detailed(p, cfg)?.0)
}

pub fn laplace_airy_detailed(p: f64, cfg: &QuadratureConfig) -> Result<((f64, f64), LaplaceRoute)> {
    if !(p.abs() <= 3.0) {
        return domain(format!("Laplace identity is checked for |p| ≤ 3, got {p}"));
    }
    let rhs = (p.powi(3) / 3.0).exp();
    if p >= 0.0 {
        Ok(((laplace_real_axis(p, cfg)?, rhs), LaplaceRoute::RealAxis))
    } else {
        Ok(((laplace_sector(p, cfg)?, rhs), LaplaceRoute::Sector))
    }
}

pub fn laplace_real_axis(p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let mut r_max: f64 = 4.0;
    while -(2.0 / 3.0) * r_max.powf(1.5) + p * r_max > cfg.abs_tol.ln() - 10.0 {
        r_max *= 1.25;
    }
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    };
    real_axis_pairing(|t| (p * t).exp(), r_max, &inner, cfg.abs_tol)
}

pub fn laplace_sector(p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let bound = move |r: f64| p.abs() * r;
    Ok(sector_pairing(3, ray_sum(3, |z| (z * p).exp()), &bound, cfg, "Laplace identity")?.value)
}

/// Coefficients `a_0 … a_N` of `f(x) = Σ a_n H_n^(3)(x, -|y|)`: the Taylor
/// coefficients at `x = 0` of `exp(|y|∂³) f`, i.e.
/// `a_n = (1/n!) (-1/s)^n ∫ Ai^{(n)}(u) f(s u) du`, `s = (3|y|)^{1/3}`, with
/// the kernel differentiated under the integral.
pub fn expansion_coefficients(f: &Integrand, yabs: f64, n_max: usize, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    positive("|y|", yabs)?;
    if n_max > MAX_EXPANSION_ORDER {
        return Err(Error::DegreeTooHigh {
            requested: n_max,
            max: MAX_EXPANSION_ORDER,
        });
    }
    let s = (3.0 * yabs).cbrt();
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            fact *= n as f64;
        }
        let v = pairing(3, n as u32, f, 0.0, s, cfg)?.value;
        out.push(v * (-1.0 / s).powi(n as i32) / fact);
    }
    Ok(out)
}

/// `Σ a_n H_n^(3)(x, -|y|)`.
pub fn series_eval(a: &[f64], yabs: f64, x: f64) -> f64 {
    a.iter()
        .enumerate()
        .map(|(n, &c)| {
            let idx = PolyIndex::new(3, n as u32).expect("order 3 is valid");
            c * hermite_eval(idx, x, -yabs)
        })
        .sum()
}

/// `∫ f` over its window — used to check kernel normalizations.
pub fn window_integral(f: &Integrand) -> Result<f64> {
    let (lo, hi) = f
        .window()
        .ok_or_else(|| Error::Domain("polynomials have no finite integral".into()))?;
    Ok(integrate(|x| Complex64::new(f.eval(x), 0.0), lo, hi, Tolerance::new(1e-14, 1e-13), 200_000).value.re)
}
