//! Real-axis integration of slowly decaying (or slowly growing) oscillatory
//! tails: the integral is cut into blocks between consecutive sign changes of
//! the integrand and the alternating block sequence is summed with the Euler
//! transform.

use num_complex::Complex64;

use super::euler::EulerSum;
use super::gauss_kronrod::{integrate, Tolerance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct TailResult {
    pub value: f64,
    pub error: f64,
    pub blocks: usize,
}

/// Limits for [`block_sum`].
#[derive(Debug, Clone, Copy)]
pub struct BlockOptions {
    pub tol: f64,
    pub max_blocks: usize,
    pub min_blocks: usize,
    pub depth: usize,
    pub max_evals_per_block: usize,
}

impl Default for BlockOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_blocks: 400,
            min_blocks: 6,
            depth: 24,
            max_evals_per_block: 20_000,
        }
    }
}

/// `∫_{start}^{±∞} f`, where `points(k)` lists the consecutive sign changes of
/// `f` beyond `start` (monotone, in the direction of integration). The piece
/// `[start, points(0)]` is integrated directly; the blocks
/// `[points(k), points(k+1)]` are accelerated.
pub fn block_sum<F, P>(mut f: F, start: f64, mut points: P, opts: BlockOptions) -> Result<TailResult>
where
    F: FnMut(f64) -> f64,
    P: FnMut(usize) -> Result<f64>,
{
    let tol = Tolerance::new(opts.tol * 1e-2, 1e-13);
    let quad = |a: f64, b: f64, f: &mut F| -> Result<(f64, f64)> {
        let r = integrate(|t| Complex64::new(f(t), 0.0), a, b, tol, opts.max_evals_per_block);
        if !r.converged {
            return Err(Error::NonConvergence {
                context: format!("oscillatory block [{a}, {b}]"),
                est_error: r.error,
                tol: opts.tol,
                nodes: r.evals,
            });
        }
        Ok((r.value.re, r.error))
    };

    let first = points(0)?;
    let (head, mut err) = quad(start, first, &mut f)?;
    let mut acc = EulerSum::new(opts.depth);
    let mut lo = first;
    let mut prev = f64::NAN;
    let mut prev_diff = f64::INFINITY;
    for k in 0..opts.max_blocks {
        let hi = points(k + 1)?;
        let (block, block_err) = quad(lo, hi, &mut f)?;
        err += block_err;
        lo = hi;
        let est = acc.push(block);
        // relative once the sum is large: growing blocks carry roundoff of their own size
        let diff = (est - prev).abs() / (head + est).abs().max(1.0);
        if k + 1 >= opts.min_blocks && diff <= opts.tol && prev_diff <= opts.tol {
            return Ok(TailResult {
                value: head + est,
                error: err + diff.max(prev_diff) * (head + est).abs().max(1.0),
                blocks: k + 1,
            });
        }
        prev_diff = diff;
        prev = est;
    }
    Err(Error::NonConvergence {
        context: "oscillatory tail acceleration".into(),
        est_error: prev_diff,
        tol: opts.tol,
        nodes: opts.max_blocks,
    })
}

/// Solves `g(t) = level` for `t` in `[lo, hi]` by bisection–Newton on an
/// increasing function; `dg` is its derivative.
pub fn solve_increasing<G, D>(g: G, dg: D, level: f64, mut lo: f64, mut hi: f64) -> f64
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    while g(hi) < level {
        hi = lo + 2.0 * (hi - lo);
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = g(t) - level;
        if v.abs() <= 1e-15 * level.abs().max(1.0) {
            break;
        }
        if v < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let d = dg(t);
        let newton = t - v / d;
        t = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    t
}
