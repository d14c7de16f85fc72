use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Contour-rotation and truncation parameters for every oscillatory
/// integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Ray angle in radians; `None` selects `π/(2q)` for phase power `q`.
    pub rotation_angle: Option<f64>,
    /// Initial ray length measured from the contour vertex; `None` derives it
    /// from the tail bound. The radius is doubled until the tail is negligible.
    pub truncation_radius: Option<f64>,
    pub abs_tol: f64,
    /// Cap on integrand evaluations for one contour integral.
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rotation_angle: None,
            truncation_radius: None,
            abs_tol: 1e-10,
            max_nodes: 200_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return domain(format!("abs_tol = {} must be a positive number", self.abs_tol));
        }
        if let Some(t) = self.truncation_radius {
            if !(t > 0.0 && t.is_finite()) {
                return domain(format!("truncation_radius = {t} must be positive"));
            }
        }
        if self.max_nodes < 15 {
            return domain("max_nodes must allow at least one Kronrod panel");
        }
        Ok(())
    }

    /// Ray angle for phase power `q`, checked against `0 < θ ≤ π/(2q)`.
    pub fn angle_for(&self, q: u32) -> Result<f64> {
        let max = PI / (2.0 * q as f64);
        match self.rotation_angle {
            None => Ok(max),
            Some(a) if a > 0.0 && a <= max * (1.0 + 1e-12) => Ok(a.min(max)),
            Some(a) => domain(format!("rotation angle {a} outside (0, π/(2·{q})]")),
        }
    }

    /// Tail bound: `exp(-T^q sin(qθ)/q) < ε/10` for a phase `t^q/q`,
    /// generalised to a coefficient `a` on `t^q`.
    pub fn initial_radius(&self, q: u32, a: f64, angle: f64) -> f64 {
        if let Some(t) = self.truncation_radius {
            return t;
        }
        let decay = a * (q as f64 * angle).sin();
        let target = (10.0 / self.abs_tol).ln() + 5.0;
        (target / decay).powf(1.0 / q as f64)
    }
}
