//! Periodic uniform grids and sampled complex functions on them.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Uniform periodic grid `x_j = x_min + j Δx`, `j = 0 … n-1`, with
/// `Δx = (x_max - x_min)/n`; the right end point is identified with the left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return domain(format!("grid needs finite x_max > x_min, got [{x_min}, {x_max}]"));
        }
        if n < 64 || !n.is_power_of_two() {
            return domain(format!("grid size n = {n} must be a power of two and at least 64"));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Angular frequency of FFT bin `j`: `2π j/L` for `j < n/2`, else
    /// `2π (j - n)/L`.
    pub fn k(&self, j: usize) -> f64 {
        let jj = if j < self.n / 2 { j as f64 } else { j as f64 - self.n as f64 };
        2.0 * PI * jj / self.length()
    }

    pub fn ks(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.k(j)).collect()
    }

    /// Number of nodes in each outer guard band (10% of the grid).
    pub fn guard(&self) -> usize {
        self.n / 10
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid1D,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return domain(format!("{} samples for a grid of {} nodes", samples.len(), grid.len()));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = (0..grid.len()).map(|j| f(grid.x(j))).collect();
        Self { grid, samples }
    }

    pub fn from_real_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub(crate) fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), self.samples.len());
        Self { grid: self.grid, samples }
    }

    /// Trapezoid-weighted `L²` norm; on a periodic grid the trapezoid rule is
    /// the plain Riemann sum.
    pub fn norm(&self) -> f64 {
        (self.grid.dx() * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Largest modulus on the two outer guard bands.
    pub fn edge_magnitude(&self) -> f64 {
        let g = self.grid.guard();
        let n = self.samples.len();
        self.samples[..g]
            .iter()
            .chain(&self.samples[n - g..])
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Checks the effective-support requirement: `|f| < 1e-12` on the outer
    /// 10% of nodes at both ends.
    pub fn check_support(&self) -> Result<()> {
        let edge = self.edge_magnitude();
        if edge >= 1e-12 {
            return domain(format!(
                "grid function is not effectively supported: |f| = {edge:e} on the outer 10% of the grid"
            ));
        }
        Ok(())
    }

    /// CSV with a `# grid …` header line, a column header and rows
    /// `x,re,im` in scientific notation with `precision` significant digits.
    pub fn to_csv(&self, precision: usize) -> String {
        let p = precision.saturating_sub(1);
        let mut out = format!(
            "# grid x_min={} x_max={} n={}\nx,re,im\n",
            self.grid.x_min, self.grid.x_max, self.grid.n
        );
        for (j, z) in self.samples.iter().enumerate() {
            let _ = writeln!(out, "{:.p$e},{:.p$e},{:.p$e}", self.grid.x(j), z.re, z.im);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty grid file".into()))?;
        let rest = header
            .strip_prefix('#')
            .map(str::trim)
            .and_then(|h| h.strip_prefix("grid"))
            .ok_or_else(|| Error::Parse(format!("expected '# grid …' header, got '{header}'")))?;
        let (mut x_min, mut x_max, mut n) = (None, None, None);
        for field in rest.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field '{field}'")))?;
            let bad = |_| Error::Parse(format!("bad value in header field '{field}'"));
            match key {
                "x_min" => x_min = Some(value.parse::<f64>().map_err(bad)?),
                "x_max" => x_max = Some(value.parse::<f64>().map_err(bad)?),
                "n" => n = Some(value.parse::<usize>().map_err(|_| Error::Parse(format!("bad n '{value}'")))?),
                _ => return Err(Error::Parse(format!("unknown header field '{key}'"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("header lacks {k}"));
        let grid = Grid1D::new(
            x_min.ok_or_else(|| missing("x_min"))?,
            x_max.ok_or_else(|| missing("x_max"))?,
            n.ok_or_else(|| missing("n"))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;

        let mut samples = Vec::with_capacity(grid.len());
        for line in lines {
            if line.starts_with('#') || line.starts_with('x') {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns, got '{line}'")));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{s}'")));
            let x = num(cols[0])?;
            let j = samples.len();
            if j >= grid.len() {
                return Err(Error::Parse("more rows than grid nodes".into()));
            }
            if (x - grid.x(j)).abs() > 1e-9 * grid.length() {
                return Err(Error::Parse(format!("row {j}: x = {x} is off the grid node {}", grid.x(j))));
            }
            samples.push(Complex64::new(num(cols[1])?, num(cols[2])?));
        }
        if samples.len() != grid.len() {
            return Err(Error::Parse(format!("{} rows for a grid of {} nodes", samples.len(), grid.len())));
        }
        Ok(Self { grid, samples })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(0.0, 1.0, 64).is_ok());
        assert!(Grid1D::new(0.0, 1.0, 32).is_err());
        assert!(Grid1D::new(0.0, 1.0, 96).is_err());
        assert!(Grid1D::new(1.0, 1.0, 64).is_err());
    }

    #[test]
    fn frequency_lattice() {
        let g = Grid1D::new(-PI, PI, 64).unwrap();
        assert_eq!(g.k(1), 1.0);
        assert_eq!(g.k(63), -1.0);
        assert_eq!(g.k(32), -32.0);
    }

    #[test]
    fn gaussian_norm() {
        let g = Grid1D::new(-10.0, 10.0, 256).unwrap();
        let f = GridFunction::from_real_fn(g, |x| (-x * x / 2.0).exp());
        assert!((f.norm() - PI.sqrt().sqrt()).abs() < 1e-13);
        assert!(f.check_support().is_ok());
        let wide = GridFunction::from_real_fn(g, |x| (-x * x / 50.0).exp());
        assert!(wide.check_support().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid1D::new(-4.0, 4.0, 64).unwrap();
        let f = GridFunction::from_fn(g, |x| Complex64::new((-x * x).exp(), x.sin()));
        let text = f.to_csv(17);
        assert!(text.starts_with("# grid x_min=-4 x_max=4 n=64\nx,re,im\n"));
        let back = GridFunction::from_csv(&text).unwrap();
        assert_eq!(back, f);
        assert!(GridFunction::from_csv("# grid x_min=0 x_max=1\n").is_err());
    }
}
