//! Exact spectral propagators on periodic grids.
//!
//! A constant-coefficient operator exponential `exp(y ∂_x^m)` is the Fourier
//! multiplier `exp(y (ik)^m)`; on the discrete frequency lattice it is applied
//! exactly, up to roundoff. The linear-potential Schrödinger evolution is
//! realized through the factorization
//!
//! ```text
//! exp(-iτ(bx - ∂²)) = exp(-α∂³) exp(-ibxτ) exp(α∂³),   α = 1/(3b),
//! ```
//!
//! which follows from `exp(α∂³) x exp(-α∂³) = x + 3α∂²`, and its analogue
//! with `∂^{2p+1}` for `bx - ∂^{2p}`.

mod grid;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::airy_fn::{airy, watson_w};
use crate::config::QuadratureConfig;
use crate::error::{domain, Error, Result};

pub use grid::{Grid1D, GridFunction};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `exp(y ∂_x^m)` as a Fourier multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPropagator {
    m: u32,
    y: f64,
}

impl SpectralPropagator {
    pub fn new(m: u32, y: f64) -> Result<Self> {
        if m < 2 {
            return domain(format!("operator order m = {m} must be at least 2"));
        }
        if !y.is_finite() {
            return domain("y must be finite");
        }
        Ok(Self { m, y })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `exp(y (ik)^m)`, with `(ik)^m = i^m k^m` formed exactly.
    pub fn multiplier(&self, k: f64) -> Complex64 {
        let km = self.y * k.powi(self.m as i32);
        match self.m % 4 {
            0 => Complex64::new(km.exp(), 0.0),
            1 => Complex64::from_polar(1.0, km),
            2 => Complex64::new((-km).exp(), 0.0),
            _ => Complex64::from_polar(1.0, -km),
        }
    }

    /// Largest `|multiplier|` over the grid's frequency lattice.
    pub fn max_gain(&self, grid: &Grid1D) -> f64 {
        grid.ks().iter().map(|&k| self.multiplier(k).norm()).fold(0.0, f64::max)
    }
}

fn fft_apply(samples: &[Complex64], mult: impl Fn(usize) -> Complex64 + Sync) -> Vec<Complex64> {
    let n = samples.len();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = samples.to_vec();
    forward.process(&mut buf);
    buf.par_iter_mut().enumerate().for_each(|(j, z)| *z *= mult(j));
    inverse.process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
    buf
}

/// Applies a propagator without the support check (for pipelines whose
/// intermediate states legitimately spread).
fn apply_multiplier(prop: &SpectralPropagator, f: &GridFunction) -> Vec<Complex64> {
    let grid = *f.grid();
    fft_apply(f.samples(), |j| prop.multiplier(grid.k(j)))
}

/// `exp(y ∂^m) f` on the grid.
///
/// Fails with [`Error::Stability`] when an even-order multiplier exceeds one
/// anywhere on the lattice (`y (-1)^{m/2} > 0`: backward diffusion).
pub fn propagate(prop: &SpectralPropagator, f: &GridFunction) -> Result<GridFunction> {
    f.check_support()?;
    if prop.m % 2 == 0 {
        let gain = prop.max_gain(f.grid());
        if gain > 1.0 {
            return Err(Error::Stability {
                m: prop.m,
                y: prop.y,
                max_gain: gain,
            });
        }
    }
    Ok(f.with_samples(apply_multiplier(prop, f)))
}

/// Solution `F(x, y) = ∫ Ai(x - ξ, y) g(ξ) dξ` of `∂_y F = -∂_x³ F`,
/// `F(x, 0) = g`, i.e. `exp(-y ∂³) g`, by direct discrete convolution with
/// the sampled kernel `Ai(x, y) = (3y)^{-1/3} Ai(x/(3y)^{1/3})`.
pub fn airy_pde_solve(g: &GridFunction, y: f64, cfg: &QuadratureConfig) -> Result<GridFunction> {
    if !(y > 0.0 && y.is_finite()) {
        return domain(format!("Airy PDE evolution needs y > 0, got {y}"));
    }
    g.check_support()?;
    let grid = *g.grid();
    let n = grid.len();
    let dx = grid.dx();
    let s = (3.0 * y).cbrt();
    // kernel at offsets (i - j) Δx, i - j ∈ [-(n-1), n-1]
    let kernel: Vec<f64> = (0..2 * n - 1)
        .into_par_iter()
        .map(|d| {
            let z = (d as f64 - (n - 1) as f64) * dx;
            airy(z / s, cfg).map(|v| v.value / s)
        })
        .collect::<Result<_>>()?;
    let src = g.samples();
    let support: Vec<usize> = (0..n).filter(|&j| src[j] != Complex64::new(0.0, 0.0)).collect();
    let out = (0..n)
        .into_par_iter()
        .map(|i| {
            let acc: Complex64 = support.iter().map(|&j| src[j] * kernel[i + n - 1 - j]).sum();
            acc * dx
        })
        .collect();
    Ok(g.with_samples(out))
}

/// Parameters of the scaled equation `i ∂_τ Ψ = -∂_x² Ψ + b x Ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerParams {
    tau: f64,
    b: f64,
}

impl SchrodingerParams {
    /// Scaled parameters directly: `τ` (length²), `b` (length⁻³).
    pub fn scaled(tau: f64, b: f64) -> Result<Self> {
        if !(tau.is_finite() && b.is_finite()) {
            return domain("τ and b must be finite");
        }
        if b == 0.0 {
            return domain("b = 0: the factorized propagator contains 1/b; use the free propagator instead");
        }
        Ok(Self { tau, b })
    }

    /// From `iħ ∂_t Ψ = -(ħ²/2m) ∂_x² Ψ + F x Ψ`: `τ = ħt/(2m)`, `b = 2Fm/ħ²`.
    pub fn physical(hbar: f64, mass: f64, force: f64, time: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return domain(format!("mass must be positive, got {mass}"));
        }
        if !(hbar > 0.0) {
            return domain(format!("ħ must be positive, got {hbar}"));
        }
        Self::scaled(hbar * time / (2.0 * mass), 2.0 * force * mass / (hbar * hbar))
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// `Ψ(τ) = exp(-α∂³) exp(-ibxτ) exp(α∂³) ψ`, `α = 1/(3b)`.
pub fn schrodinger_evolve(psi: &GridFunction, params: &SchrodingerParams) -> Result<GridFunction> {
    schrodinger_evolve_general(psi, params, 1)
}

/// `Ψ(τ) = exp(-β∂^{2p+1}) exp(-ibxτ) exp(β∂^{2p+1}) ψ`,
/// `β = 1/((2p+1)b)`, solving `i ∂_τ Ψ = -∂^{2p} Ψ + b x Ψ`.
pub fn schrodinger_evolve_general(psi: &GridFunction, params: &SchrodingerParams, p: u32) -> Result<GridFunction> {
    if p < 1 {
        return domain(format!("p = {p} must be at least 1"));
    }
    let q = 2 * p + 1;
    let beta = 1.0 / (q as f64 * params.b);
    let grid = *psi.grid();
    let inner = SpectralPropagator::new(q, beta)?;
    let outer = SpectralPropagator::new(q, -beta)?;
    let mut state = apply_multiplier(&inner, psi);
    let bt = params.b * params.tau;
    state
        .par_iter_mut()
        .enumerate()
        .for_each(|(j, z)| *z *= Complex64::from_polar(1.0, -bt * grid.x(j)));
    let mid = psi.with_samples(state);
    Ok(psi.with_samples(apply_multiplier(&outer, &mid)))
}

/// Watson's function sampled on the grid, with cosine tapers over the
/// outer 10% at both ends: W oscillates without decay for `x → -∞` and tails
/// off only like `sin(2x²)/(4x)` for `x → +∞`.
pub fn watson_windowed(grid: &Grid1D, cfg: &QuadratureConfig) -> Result<GridFunction> {
    let width = 0.1 * grid.length();
    let (left, right) = (grid.x_min(), grid.x_max());
    let samples = (0..grid.len())
        .into_par_iter()
        .map(|j| {
            let x = grid.x(j);
            let w = watson_w(x, cfg)?.value;
            let edge = (x - left).min(right - x);
            let taper = if edge < width {
                0.5 * (1.0 - (PI * edge / width).cos())
            } else {
                1.0
            };
            Ok(Complex64::new(w * taper, 0.0))
        })
        .collect::<Result<_>>()?;
    GridFunction::new(*grid, samples)
}

/// `J = exp((i/4) ∂²) W` of the windowed Watson function: multiplier
/// `exp(-ik²/4)`.
pub fn watson_j(grid: &Grid1D, cfg: &QuadratureConfig) -> Result<GridFunction> {
    let w = watson_windowed(grid, cfg)?;
    Ok(w.with_samples(fft_apply(w.samples(), |j| Complex64::from_polar(1.0, -grid.k(j).powi(2) / 4.0))))
}

/// Spectral derivative `∂^order f` (used for residual checks).
pub fn spectral_derivative(f: &GridFunction, order: u32) -> GridFunction {
    let grid = *f.grid();
    f.with_samples(fft_apply(f.samples(), |j| (I * grid.k(j)).powu(order)))
}

/// Norm and normalized first moments of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub norm: f64,
    pub mean_x: f64,
    pub mean_k: f64,
}

/// `‖ψ‖₂`, `⟨x⟩ = ∫ x|ψ|²/‖ψ‖²` and `⟨k⟩ = Σ k_j |ψ̂_j|² / Σ |ψ̂_j|²`.
pub fn observables(psi: &GridFunction) -> Result<Observables> {
    let norm = psi.norm();
    if norm < 1e-14 {
        return Err(Error::ZeroNorm(norm));
    }
    let grid = *psi.grid();
    let dx = grid.dx();
    let mean_x = psi
        .samples()
        .iter()
        .enumerate()
        .map(|(j, z)| grid.x(j) * z.norm_sqr())
        .sum::<f64>()
        * dx
        / (norm * norm);
    let mut planner = FftPlanner::<f64>::new();
    let mut buf = psi.samples().to_vec();
    planner.plan_fft_forward(grid.len()).process(&mut buf);
    let (num, den) = buf
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(a, b), (j, z)| (a + grid.k(j) * z.norm_sqr(), b + z.norm_sqr()));
    Ok(Observables {
        norm,
        mean_x,
        mean_k: num / den,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: Grid1D, x0: f64, sigma: f64, k0: f64) -> GridFunction {
        GridFunction::from_fn(grid, |x| {
            Complex64::from_polar((-(x - x0).powi(2) / (2.0 * sigma * sigma)).exp(), k0 * x)
        })
    }

    fn max_diff(a: &GridFunction, b: &GridFunction) -> f64 {
        a.samples().iter().zip(b.samples()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_time_is_identity() {
        let g = Grid1D::new(-20.0, 20.0, 256).unwrap();
        let f = gaussian(g, 0.0, 1.0, 0.5);
        let out = propagate(&SpectralPropagator::new(3, 0.0).unwrap(), &f).unwrap();
        assert!(max_diff(&out, &f) < 1e-14);
    }

    #[test]
    fn heat_kernel_matches_closed_form() {
        // exp(y ∂²) e^{-x²} = e^{-x²/(1+4y)} / √(1+4y)
        let g = Grid1D::new(-20.0, 20.0, 512).unwrap();
        let f = GridFunction::from_real_fn(g, |x| (-x * x).exp());
        let out = propagate(&SpectralPropagator::new(2, 0.5).unwrap(), &f).unwrap();
        let want = GridFunction::from_real_fn(g, |x| (-x * x / 3.0).exp() / 3.0_f64.sqrt());
        assert!(max_diff(&out, &want) < 1e-13);
    }

    #[test]
    fn backward_diffusion_is_rejected() {
        let g = Grid1D::new(-20.0, 20.0, 256).unwrap();
        let f = gaussian(g, 0.0, 1.0, 0.0);
        assert!(matches!(
            propagate(&SpectralPropagator::new(2, -1.0).unwrap(), &f),
            Err(Error::Stability { m: 2, .. })
        ));
        assert!(propagate(&SpectralPropagator::new(4, 1.0).unwrap(), &f).is_err());
        assert!(propagate(&SpectralPropagator::new(4, -1.0).unwrap(), &f).is_ok());
    }

    #[test]
    fn odd_multipliers_are_unimodular() {
        for m in [3, 5, 7] {
            let p = SpectralPropagator::new(m, 0.37).unwrap();
            for k in [-3.0, -0.1, 0.0, 2.5, 40.0] {
                assert!((p.multiplier(k).norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn unsupported_input_is_rejected() {
        let g = Grid1D::new(-5.0, 5.0, 64).unwrap();
        let f = gaussian(g, 0.0, 3.0, 0.0);
        assert!(propagate(&SpectralPropagator::new(3, 1.0).unwrap(), &f).is_err());
    }

    #[test]
    fn observables_of_shifted_packets() {
        let g = Grid1D::new(-30.0, 30.0, 1024).unwrap();
        let o = observables(&gaussian(g, 0.0, 1.0, 0.0)).unwrap();
        assert!(o.mean_x.abs() < 1e-12 && o.mean_k.abs() < 1e-12);
        let o = observables(&gaussian(g, 0.0, 1.0, 1.3)).unwrap();
        assert!((o.mean_k - 1.3).abs() < 1e-8);
        let o = observables(&gaussian(g, 2.5, 1.0, 0.0)).unwrap();
        assert!((o.mean_x - 2.5).abs() < 1e-8);
        let zero = GridFunction::from_real_fn(g, |_| 0.0);
        assert!(matches!(observables(&zero), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn schrodinger_zero_time_and_unitarity() {
        let g = Grid1D::new(-40.0, 40.0, 1024).unwrap();
        let f = gaussian(g, -3.0, 1.5, 0.7);
        let id = schrodinger_evolve(&f, &SchrodingerParams::scaled(0.0, 0.8).unwrap()).unwrap();
        assert!(max_diff(&id, &f) < 1e-12);
        let out = schrodinger_evolve(&f, &SchrodingerParams::scaled(1.2, 0.8).unwrap()).unwrap();
        assert!((out.norm() / f.norm() - 1.0).abs() < 1e-12);
        assert!(SchrodingerParams::scaled(1.0, 0.0).is_err());
    }

    #[test]
    fn physical_parameter_conversion() {
        let p = SchrodingerParams::physical(2.0, 0.5, 3.0, 4.0).unwrap();
        assert_eq!(p.tau(), 2.0 * 4.0 / 1.0);
        assert_eq!(p.b(), 2.0 * 3.0 * 0.5 / 4.0);
        assert!(SchrodingerParams::physical(1.0, 0.0, 1.0, 1.0).is_err());
    }
}
