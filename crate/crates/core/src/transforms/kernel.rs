//! Pairings `∫ Ai^(q)(u) g(u) du` of the generalized Airy kernel with an
//! input function, evaluated in one of two ways.
//!
//! *Direct*: for `g` negligible outside a finite window the integral is taken
//! along the real axis, sampling the kernel by contour quadrature.
//!
//! *Sector route*: for entire `g` of at most exponential growth (polynomials,
//! exponentials) the real-line integral converges only conditionally or not
//! at all. Writing `A_0` for the decaying solution attached to the first
//! sector (see [`first_sector_derivative`]) and `ζ = e^{2πi/q}`,
//!
//! ```text
//! ∫ Ai^(q)(u) g(u) du = Σ_{k=0}^{q-1} ∫_0^∞ A_0(r) g(ζ^{-k} r) dr,
//! ```
//!
//! which is the Abel-regularized value of the left side. On monomials both
//! sides equal `(qj)! ((-1)^{p+1}/q)^j / j!` for degree `qj` and vanish
//! otherwise; `A_0` decays like `exp(-κ r^{q/(q-1)})` with
//! `κ = ((q-1)/q) sin(π/(q-1))`, so the right side is absolutely convergent.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::airy_fn::{airy_generalized_derivative, first_sector_derivative};
use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::gauss_kronrod::{integrate_breaks, Tolerance};

/// Value and error estimate of a real pairing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub value: f64,
    pub error: f64,
    /// Imaginary residue of the complex sum (zero in exact arithmetic).
    pub imag: f64,
}

fn decay_rate(q: u32) -> f64 {
    let qf = q as f64;
    (qf - 1.0) / qf * (PI / (qf - 1.0)).sin()
}

/// Cut-off radius past which `|A_0(r)| · bound(r)` stays below `tol·1e-3`;
/// `log_bound(r)` bounds `ln |g|` on the circle of radius `r`.
fn cutoff(q: u32, tol: f64, log_bound: &dyn Fn(f64) -> f64) -> f64 {
    let kappa = decay_rate(q);
    let e = q as f64 / (q as f64 - 1.0);
    let target = tol.ln() - 7.0;
    let mut r: f64 = 2.0;
    while -kappa * r.powf(e) + log_bound(r) + r.ln() > target {
        r *= 1.25;
        if r > 1e6 {
            break;
        }
    }
    r
}

fn quad_cfg(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    }
}

/// `Σ_k g(ζ^{-k} r)`, the integrand of the sector route apart from `A_0`.
pub(crate) fn ray_sum<G>(q: u32, g: G) -> impl Fn(f64) -> Complex64
where
    G: Fn(Complex64) -> Complex64,
{
    let zeta: Vec<Complex64> = (0..q)
        .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / q as f64))
        .collect();
    move |r| zeta.iter().map(|&z| g(z * r)).sum()
}

/// The ray sum of a polynomial `Σ b_j u^j`, in closed form: the roots of
/// unity cancel every power not divisible by `q`, leaving
/// `q Σ_{q | j} b_j r^j` (real, and free of the cancellation the complex
/// sum would suffer).
pub(crate) fn ray_sum_poly(q: u32, b: &[f64]) -> Vec<f64> {
    b.iter()
        .enumerate()
        .map(|(j, &v)| if j % q as usize == 0 { q as f64 * v } else { 0.0 })
        .collect()
}

/// `∫_0^∞ A_0(r) h(r) dr`, with `h` the ray sum of an entire function
/// (see [`ray_sum`]) and `log_bound(r)` bounding `ln |h(r)|`.
pub(crate) fn sector_pairing<H>(
    q: u32,
    h: H,
    log_bound: &dyn Fn(f64) -> f64,
    cfg: &QuadratureConfig,
    context: &str,
) -> Result<Pairing>
where
    H: Fn(f64) -> Complex64,
{
    let r_max = cutoff(q, cfg.abs_tol, log_bound);
    let inner = quad_cfg(cfg);
    let mut failure = None;
    let f = |r: f64| match first_sector_derivative(q, r, 0, &inner) {
        Ok((a0, _)) => a0 * h(r),
        Err(e) => {
            failure.get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    // panels of unit length resolve the kernel's transition region
    let breaks: Vec<f64> = (0..=r_max.ceil() as usize).map(|i| (i as f64).min(r_max)).collect();
    // relative accuracy matters for large polynomial values
    let r = integrate_breaks(f, &breaks, Tolerance::new(cfg.abs_tol, 1e-11), cfg.max_nodes);
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::NonConvergence {
            context: context.to_string(),
            est_error: r.error,
            tol: cfg.abs_tol,
            nodes: r.evals,
        });
    }
    Ok(Pairing {
        value: r.value.re,
        error: r.error,
        imag: r.value.im,
    })
}

/// `∫_{u_lo}^{u_hi} ∂^n Ai^(q)(u) g(u) du` along the real axis.
pub(crate) fn direct_pairing<G>(
    q: u32,
    n: u32,
    g: G,
    u_lo: f64,
    u_hi: f64,
    knots: &[f64],
    cfg: &QuadratureConfig,
    context: &str,
) -> Result<Pairing>
where
    G: Fn(f64) -> f64,
{
    let inner = quad_cfg(cfg);
    let mut failure = None;
    let mut imag_max: f64 = 0.0;
    let f = |u: f64| match airy_generalized_derivative(q, u, n, &inner) {
        Ok(v) => {
            imag_max = imag_max.max(v.imag.abs());
            Complex64::new(v.value * g(u), 0.0)
        }
        Err(e) => {
            failure.get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let mut breaks = vec![u_lo];
    // split at about unit spacing so the kernel's oscillation is resolved from the start
    let pieces = ((u_hi - u_lo).ceil() as usize).clamp(1, 400);
    let mut inner_knots: Vec<f64> = (1..pieces)
        .map(|i| u_lo + (u_hi - u_lo) * i as f64 / pieces as f64)
        .chain(knots.iter().copied().filter(|&k| k > u_lo && k < u_hi))
        .collect();
    inner_knots.sort_by(f64::total_cmp);
    breaks.extend(inner_knots);
    breaks.push(u_hi);
    let r = integrate_breaks(f, &breaks, Tolerance::new(cfg.abs_tol, 1e-13), cfg.max_nodes);
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::NonConvergence {
            context: context.to_string(),
            est_error: r.error,
            tol: cfg.abs_tol,
            nodes: r.evals,
        });
    }
    Ok(Pairing {
        value: r.value.re,
        error: r.error,
        imag: imag_max,
    })
}
