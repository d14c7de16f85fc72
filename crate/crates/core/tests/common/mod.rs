#![allow(dead_code)]

use airykit::evolution::{Grid1D, GridFunction};
use num_complex::Complex64;

pub fn gaussian(grid: Grid1D, x0: f64, sigma: f64, k0: f64) -> GridFunction {
    GridFunction::from_fn(grid, |x| {
        Complex64::from_polar((-(x - x0).powi(2) / (2.0 * sigma * sigma)).exp(), k0 * x)
    })
}

pub fn max_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    a.samples().iter().zip(b.samples()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

/// Banded matrix with `w` sub- and super-diagonals, row-major by offset.
pub struct Banded {
    pub w: usize,
    pub n: usize,
    /// `bands[d][i]` holds `A[i][i + d - w]`.
    pub bands: Vec<Vec<Complex64>>,
}

impl Banded {
    pub fn mul(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for d in 0..=2 * self.w {
                    let j = i as isize + d as isize - self.w as isize;
                    if j >= 0 && (j as usize) < self.n {
                        acc += self.bands[d][i] * v[j as usize];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place LU without pivoting. `I + iS` with `S` real symmetric has a
    /// positive-definite Hermitian part, so every leading minor is nonsingular.
    pub fn factor(mut self) -> Self {
        let (w, n) = (self.w, self.n);
        for k in 0..n {
            let pivot = self.bands[w][k];
            for i in k + 1..(k + w + 1).min(n) {
                let l = self.bands[w + k - i][i] / pivot;
                self.bands[w + k - i][i] = l;
                for j in k + 1..(k + w + 1).min(n) {
                    let dij = w + j - i;
                    let dkj = w + j - k;
                    let u = self.bands[dkj][k];
                    self.bands[dij][i] -= l * u;
                }
            }
        }
        self
    }

    pub fn solve(&self, b: &mut [Complex64]) {
        let (w, n) = (self.w, self.n);
        for i in 0..n {
            for k in i.saturating_sub(w)..i {
                let l = self.bands[w + k - i][i];
                b[i] -= l * b[k];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..(i + w + 1).min(n) {
                b[i] -= self.bands[w + j - i][i] * b[j];
            }
            b[i] /= self.bands[w][i];
        }
    }
}

/// Crank–Nicolson integration of `i ∂_τ Ψ = -∂^{2p} Ψ + b x Ψ` (`p = 1, 2`)
/// with second-order central differences and homogeneous Dirichlet ends,
/// `steps` uniform steps.
pub fn crank_nicolson(psi: &GridFunction, p: u32, b: f64, tau: f64, steps: usize) -> GridFunction {
    let grid = *psi.grid();
    let n = grid.len();
    let h = grid.dx();
    // -∂^{2p} as a stencil
    let stencil: Vec<f64> = match p {
        1 => vec![-1.0, 2.0, -1.0].into_iter().map(|c| c / (h * h)).collect(),
        // -∂⁴ = -(δ⁴): (1, -4, 6, -4, 1)/h⁴ with the sign flipped
        2 => vec![-1.0, 4.0, -6.0, 4.0, -1.0].into_iter().map(|c| c / h.powi(4)).collect(),
        _ => panic!("oracle supports p = 1, 2"),
    };
    let w = p as usize;
    let dt = tau / steps as f64;
    let half = Complex64::new(0.0, 0.5 * dt);
    let build = |sign: f64| {
        let mut bands = vec![vec![Complex64::new(0.0, 0.0); n]; 2 * w + 1];
        for i in 0..n {
            for (d, &c) in stencil.iter().enumerate() {
                let mut hij = c;
                if d == w {
                    hij += b * grid.x(i);
                }
                let id = if d == w { 1.0 } else { 0.0 };
                bands[d][i] = Complex64::new(id, 0.0) + half * sign * hij;
            }
        }
        Banded { w, n, bands }
    };
    let lhs = build(1.0).factor();
    let rhs = build(-1.0);
    let mut state = psi.samples().to_vec();
    for _ in 0..steps {
        let mut next = rhs.mul(&state);
        lhs.solve(&mut next);
        state = next;
    }
    GridFunction::new(grid, state).expect("grid sizes agree")
}
