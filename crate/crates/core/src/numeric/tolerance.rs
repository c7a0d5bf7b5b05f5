use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid tolerance `{name}`: {reason}")]
pub struct ToleranceError {
    pub name: &'static str,
    pub reason: String,
}

/// Numerical knobs shared by every stage of an analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Geometric predicate tolerance (float mode only), relative to coordinate scale.
    pub eps_geom: f64,
    /// Accepted characteristic-polynomial residual for computed eigenvalues.
    pub eps_eig: f64,
    /// Radians within which an eigenvalue argument counts as `pi * p / n`.
    pub angle_tol: f64,
    /// Largest denominator `n` searched for rational angles.
    pub denom_max: u32,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_geom: 1e-9,
            eps_eig: 1e-10,
            angle_tol: 1e-9,
            denom_max: 64,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), ToleranceError> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ToleranceError {
                    name,
                    reason: format!("must be finite and > 0, got {v}"),
                })
            }
        };
        positive("eps_geom", self.eps_geom)?;
        positive("eps_eig", self.eps_eig)?;
        positive("angle_tol", self.angle_tol)?;
        if self.denom_max < 1 {
            return Err(ToleranceError {
                name: "denom_max",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}
