use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::evolution::GridFunction;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Input function of a transform together with its growth class, which
/// decides how (and whether) a transform integral can be evaluated.
#[derive(Clone)]
pub enum Integrand {
    /// `Σ c_j ξ^j`, coefficients in ascending order.
    Polynomial(Vec<f64>),
    /// `|f(ξ)| ≲ exp(-((ξ - center)/width)²)`.
    GaussianDecay { f: RealFn, center: f64, width: f64 },
    /// `f = 0` outside `[lo, hi]`.
    CompactSupport { f: RealFn, lo: f64, hi: f64 },
    /// Real part of grid samples, interpolated by monotone cubics, zero off
    /// the grid.
    Sampled(Sampled),
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Self::GaussianDecay { center, width, .. } => f
                .debug_struct("GaussianDecay")
                .field("center", center)
                .field("width", width)
                .finish_non_exhaustive(),
            Self::CompactSupport { lo, hi, .. } => {
                f.debug_struct("CompactSupport").field("lo", lo).field("hi", hi).finish_non_exhaustive()
            }
            Self::Sampled(s) => f.debug_tuple("Sampled").field(&s.xs.len()).finish(),
        }
    }
}

impl Integrand {
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        Self::Polynomial(c)
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::Polynomial(coeffs)
    }

    /// `exp(-ξ²)`.
    pub fn gaussian() -> Self {
        Self::gaussian_decay(|x| (-x * x).exp(), 0.0, 1.0)
    }

    pub fn gaussian_decay(f: impl Fn(f64) -> f64 + Send + Sync + 'static, center: f64, width: f64) -> Self {
        Self::GaussianDecay {
            f: Arc::new(f),
            center,
            width,
        }
    }

    pub fn compact(f: impl Fn(f64) -> f64 + Send + Sync + 'static, lo: f64, hi: f64) -> Self {
        Self::CompactSupport { f: Arc::new(f), lo, hi }
    }

    pub fn sampled(g: &GridFunction) -> Self {
        let xs = g.grid().xs();
        let ys = g.samples().iter().map(|z| z.re).collect();
        Self::Sampled(Sampled::new(xs, ys))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Polynomial(c) if c.iter().all(|v| v.is_finite()) => Ok(()),
            Self::Polynomial(_) => domain("polynomial coefficients must be finite"),
            Self::GaussianDecay { center, width, .. } => {
                if center.is_finite() && *width > 0.0 && width.is_finite() {
                    Ok(())
                } else {
                    domain("Gaussian-decay integrand needs a finite center and positive width")
                }
            }
            Self::CompactSupport { lo, hi, .. } => {
                if lo.is_finite() && hi.is_finite() && lo < hi {
                    Ok(())
                } else {
                    domain("compact support needs finite lo < hi")
                }
            }
            Self::Sampled(_) => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &a| acc * x + a),
            Self::GaussianDecay { f, .. } => f(x),
            Self::CompactSupport { f, lo, hi } => {
                if x < *lo || x > *hi {
                    0.0
                } else {
                    f(x)
                }
            }
            Self::Sampled(s) => s.eval(x),
        }
    }

    /// Interval outside which the integrand is negligible (`< ~1e-17` of its
    /// scale); `None` for polynomials.
    pub fn window(&self) -> Option<(f64, f64)> {
        match self {
            Self::Polynomial(_) => None,
            // exp(-u²) < 1e-17 for |u| > 6.3
            Self::GaussianDecay { center, width, .. } => Some((center - 6.3 * width, center + 6.3 * width)),
            Self::CompactSupport { lo, hi, .. } => Some((*lo, *hi)),
            Self::Sampled(s) => Some(s.range()),
        }
    }

    /// Breakpoints inside the window where the integrand may have kinks.
    pub(crate) fn knots(&self) -> Vec<f64> {
        match self {
            Self::Sampled(s) => s.xs.clone(),
            _ => Vec::new(),
        }
    }
}

/// Coefficients of `f(x + s u)` as a polynomial in `u`.
pub(crate) fn shifted_poly(c: &[f64], x: f64, s: f64) -> Vec<f64> {
    // Taylor shift by repeated synthetic division, then scale
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            a[j] += x * a[j + 1];
        }
    }
    let mut sp = 1.0;
    for v in &mut a {
        *v *= sp;
        sp *= s;
    }
    a
}

pub(crate) fn poly_derivative(c: &[f64], order: usize) -> Vec<f64> {
    let mut d = c.to_vec();
    for _ in 0..order {
        if d.is_empty() {
            break;
        }
        d = d.iter().enumerate().skip(1).map(|(j, &a)| a * j as f64).collect();
    }
    d
}

/// Monotone piecewise-cubic (Fritsch–Carlson) interpolant of samples on
/// increasing abscissae; zero outside the sample range.
#[derive(Debug, Clone)]
pub struct Sampled {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Sampled {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert_eq!(xs.len(), ys.len(), "abscissae and values differ in length");
        assert!(xs.len() >= 2, "need at least two samples");
        let n = xs.len();
        let secant: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secant[0];
        slopes[n - 1] = secant[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (secant[i - 1], secant[i]);
            slopes[i] = if a * b <= 0.0 {
                0.0
            } else {
                // weighted harmonic mean keeps each piece monotone
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / a + w2 / b)
            };
        }
        Self { xs, ys, slopes }
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().expect("non-empty"))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.range();
        if !(lo..=hi).contains(&x) {
            return 0.0;
        }
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            p => (p - 1).min(self.xs.len() - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_direct_evaluation() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let sh = shifted_poly(&c, 0.7, 1.3);
        let direct = Integrand::polynomial(c.to_vec());
        for u in [-1.0, 0.0, 0.4, 2.0] {
            let via: f64 = sh.iter().rev().fold(0.0, |a, &v| a * u + v);
            assert!((via - direct.eval(0.7 + 1.3 * u)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_polynomial() {
        assert_eq!(poly_derivative(&[1.0, 2.0, 3.0, 4.0], 2), vec![6.0, 24.0]);
        assert!(poly_derivative(&[1.0], 1).is_empty());
    }

    #[test]
    fn monotone_interpolation() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| (x - 4.0).tanh()).collect();
        let s = Sampled::new(xs.clone(), ys.clone());
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(s.eval(*x), *y);
        }
        // monotone data stay monotone between nodes
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=950 {
            let v = s.eval(i as f64 * 0.01);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
        assert_eq!(s.eval(-1.0), 0.0);
        assert!((s.eval(4.1) - 0.1f64.tanh()).abs() < 1e-2);
    }
}
