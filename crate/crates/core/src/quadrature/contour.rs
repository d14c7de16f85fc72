//! Oscillatory integrals `∫ w(t) exp(i(a t^q + b t)) dt` evaluated on
//! deformed contours.
//!
//! The integrand is entire, so by Cauchy's theorem the real line may be
//! replaced by any path joining the same two decay sectors at infinity. On a
//! ray `t = v + s e^{iθ}` with `0 < θ ≤ π/(2q)` the leading phase term becomes
//! `-a s^q sin(qθ)` and the integrand decays like a stretched Gaussian. The
//! rays are attached to the relevant saddle points of the phase, so the
//! integrand never exceeds its value at the vertices by much; that value is
//! factored out, which keeps the quadrature tolerance relative even where the
//! result is exponentially small.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gauss_kronrod::{integrate, integrate_breaks, Tolerance};
use crate::config::QuadratureConfig;
use crate::error::{domain, Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Phase `a t^q + b t` (the integrand is `exp(i·phase)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub power: u32,
    pub coeff: f64,
    pub linear: f64,
}

impl Phase {
    pub fn new(power: u32, coeff: f64, linear: f64) -> Self {
        Self { power, coeff, linear }
    }

    pub fn exponent(&self, t: Complex64) -> Complex64 {
        I * (self.coeff * t.powu(self.power) + self.linear * t)
    }

    /// Modulus of the saddle points `q a t^(q-1) = -b`.
    pub fn saddle_radius(&self) -> f64 {
        (self.linear.abs() / (self.power as f64 * self.coeff)).powf(1.0 / (self.power as f64 - 1.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Start {
    /// Arrive from infinity along the ray of this angle into the first vertex.
    Ray(f64),
    /// Start at the first vertex.
    Point,
}

/// Polygonal path: optional incoming ray, straight segments between
/// vertices, outgoing ray.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    start: Start,
    vertices: Vec<Complex64>,
    out_angle: f64,
}

impl Contour {
    /// Path equivalent to the real line for an odd power with `a > 0`:
    /// from the sector around `π - θ` to the sector around `θ`.
    ///
    /// For `b < 0` the two real saddles `±r` are joined through the point
    /// `-i r/2`: below the real axis and between the saddles the integrand is
    /// exponentially small, so the oscillation of the real segment is avoided.
    /// For `b ≥ 0` the path runs horizontally through the pair of complex
    /// saddles closest to the real axis.
    pub fn real_line(phase: &Phase, angle: f64) -> Self {
        let r = phase.saddle_radius();
        let q = phase.power as f64;
        let vertices = if r == 0.0 {
            vec![Complex64::new(0.0, 0.0)]
        } else if phase.linear < 0.0 {
            vec![Complex64::new(-r, 0.0), Complex64::new(0.0, -0.5 * r), Complex64::new(r, 0.0)]
        } else {
            let right = Complex64::from_polar(r, PI / (q - 1.0));
            vec![-right.conj(), right]
        };
        Self {
            start: Start::Ray(PI - angle),
            vertices,
            out_angle: angle,
        }
    }

    /// Elementary path from the decay sector around `2π/q + θ` to the one
    /// around `θ`, through the saddle at angle `π/(q-1)`. Only defined for
    /// `b ≥ 0`.
    ///
    /// Leaving the saddle straight along the incoming sector direction climbs
    /// uphill for `q ≥ 5`, so the incoming side follows a traced
    /// steepest-descent polyline until the integrand has dropped by `e^{-40}`
    /// and only then joins the ray.
    pub fn first_sector(phase: &Phase, angle: f64) -> Result<Self> {
        if phase.linear < 0.0 {
            return domain("first-sector contour requires a non-negative linear coefficient");
        }
        let q = phase.power as f64;
        let saddle = Complex64::from_polar(phase.saddle_radius(), PI / (q - 1.0));
        let in_angle = 2.0 * PI / q + angle;
        let mut vertices = match descent_path(phase, saddle, in_angle) {
            Some(mut path) => {
                path.reverse();
                path
            }
            None => Vec::new(),
        };
        vertices.push(saddle);
        Ok(Self {
            start: Start::Ray(in_angle),
            vertices,
            out_angle: angle,
        })
    }

    /// Half-line `[0, ∞)` deformed onto a ray of angle `θ`; for `b < 0` the
    /// path first follows the real axis up to the real saddle.
    pub fn half_line(phase: &Phase, angle: f64) -> Self {
        let mut vertices = vec![Complex64::new(0.0, 0.0)];
        if phase.linear < 0.0 {
            vertices.push(Complex64::new(phase.saddle_radius(), 0.0));
        }
        Self {
            start: Start::Point,
            vertices,
            out_angle: angle,
        }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }
}

/// Steepest-descent polyline of `exp(i·phase)` leaving `saddle` on the branch
/// that heads towards direction `toward`; the saddle itself is not included.
/// `None` when a straight ray of that direction already descends (within 35°
/// of the local descent direction) or the saddle is degenerate.
fn descent_path(phase: &Phase, saddle: Complex64, toward: f64) -> Option<Vec<Complex64>> {
    let rho = saddle.norm();
    if rho == 0.0 {
        return None;
    }
    let q = phase.power;
    let dphi = |t: Complex64| I * (phase.coeff * q as f64 * t.powu(q - 1) + phase.linear);
    let d2phi = I * (phase.coeff * (q * (q - 1)) as f64 * saddle.powu(q - 2));
    let d = (-d2phi.norm() / d2phi).sqrt();
    let target = Complex64::from_polar(1.0, toward);
    let best = (d * target.conj()).re.abs();
    if best >= (35.0_f64).to_radians().cos() {
        return None;
    }
    let level = phase.exponent(saddle).re;
    let trace = |dir: Complex64| {
        let mut t = saddle + dir * (0.05 * rho / q as f64);
        let mut pts = vec![t];
        for _ in 0..2000 {
            if phase.exponent(t).re < level - 40.0 {
                break;
            }
            let h = 0.2 * t.norm().max(rho) / q as f64;
            let step = |z: Complex64| {
                let g = -dphi(z).conj();
                g / g.norm()
            };
            let mid = t + step(t) * (0.5 * h);
            t += step(mid) * h;
            pts.push(t);
        }
        pts
    };
    let closeness = |p: &Vec<Complex64>| {
        let end = *p.last().expect("trace has a point");
        (end / end.norm() * target.conj()).re
    };
    let a = trace(d);
    let b = trace(-d);
    Some(if closeness(&a) >= closeness(&b) { a } else { b })
}

#[derive(Debug, Clone, Copy)]
pub struct ContourValue {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

/// `∫_contour weight(t) exp(i·phase(t)) dt`.
pub fn integrate_contour<W>(
    phase: &Phase,
    weight: W,
    contour: &Contour,
    cfg: &QuadratureConfig,
    context: &str,
) -> Result<ContourValue>
where
    W: Fn(Complex64) -> Complex64,
{
    let log_scale = contour
        .vertices
        .iter()
        .map(|&v| phase.exponent(v).re)
        .fold(f64::NEG_INFINITY, f64::max);
    let g = |t: Complex64| weight(t) * (phase.exponent(t) - log_scale).exp();

    let n_rays = if matches!(contour.start, Start::Ray(_)) { 2 } else { 1 };
    let chain = contour.vertices.len() > 1;
    let tol = cfg.abs_tol / (n_rays + chain as usize) as f64;
    let angle = contour.out_angle;
    let mut budget = Budget {
        left: cfg.max_nodes,
        used: 0,
        max: cfg.max_nodes,
    };

    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;

    if let Start::Ray(dir) = contour.start {
        let (v, e) = ray(&g, contour.vertices[0], dir, phase, angle, tol, cfg, &mut budget, context)?;
        total -= v;
        error += e;
    }
    if chain {
        // the polyline as one path, parameterized by u ∈ [0, n-1]
        let vs = &contour.vertices;
        let n = vs.len();
        let path = |u: f64| {
            let i = (u.floor() as usize).min(n - 2);
            let d = vs[i + 1] - vs[i];
            g(vs[i] + d * (u - i as f64)) * d
        };
        let breaks: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let r = integrate_breaks(path, &breaks, Tolerance::abs(tol), budget.left);
        budget.spend(r.evals, r.converged, r.error, tol, context)?;
        total += r.value;
        error += r.error;
    }
    let last = *contour.vertices.last().expect("contour has a vertex");
    let (v, e) = ray(&g, last, contour.out_angle, phase, angle, tol, cfg, &mut budget, context)?;
    total += v;
    error += e;

    let scale = log_scale.exp();
    Ok(ContourValue {
        value: total * scale,
        error: error * scale,
        evals: budget.used,
    })
}

struct Budget {
    left: usize,
    used: usize,
    max: usize,
}

impl Budget {
    fn spend(&mut self, evals: usize, converged: bool, err: f64, tol: f64, context: &str) -> Result<()> {
        self.used += evals;
        self.left = self.left.saturating_sub(evals);
        if !converged || self.left == 0 {
            return Err(Error::NonConvergence {
                context: context.to_string(),
                est_error: err,
                tol,
                nodes: self.max,
            });
        }
        Ok(())
    }
}

/// `∫_0^∞ g(v + s e^{i dir}) e^{i dir} ds`, truncated at a radius that
/// is doubled until the next shell contributes below `tol/10`.
#[allow(clippy::too_many_arguments)]
fn ray<G>(
    g: &G,
    vertex: Complex64,
    dir: f64,
    phase: &Phase,
    angle: f64,
    tol: f64,
    cfg: &QuadratureConfig,
    budget: &mut Budget,
    context: &str,
) -> Result<(Complex64, f64)>
where
    G: Fn(Complex64) -> Complex64,
{
    let e = Complex64::from_polar(1.0, dir);
    let f = |s: f64| g(vertex + e * s) * e;
    let mut radius = cfg.initial_radius(phase.power, phase.coeff, angle);
    let head = integrate(f, 0.0, radius, Tolerance::abs(0.5 * tol), budget.left);
    budget.spend(head.evals, head.converged, head.error, tol, context)?;
    let mut value = head.value;
    let mut error = head.error;
    for _ in 0..12 {
        let shell = integrate(f, radius, 2.0 * radius, Tolerance::abs(0.05 * tol), budget.left);
        budget.spend(shell.evals, shell.converged, shell.error, tol, context)?;
        value += shell.value;
        error += shell.error;
        radius *= 2.0;
        if shell.value.norm() <= 0.1 * tol {
            return Ok((value, error));
        }
    }
    Err(Error::NonConvergence {
        context: format!("{context}: ray tail did not decay"),
        est_error: error,
        tol,
        nodes: budget.used,
    })
}
