//! Eigenvalue arguments of `T^-1`, the step bound, the contraction check
//! and the facet-normal criterion.

mod angle;
mod bound;
mod stability;
mod sw;

use num_rational::BigRational;
use thiserror::Error;

use crate::numeric::{eigenvalues, Complex64, Matrix, Scalar, ToleranceConfig};

pub use angle::{
    angle_residual, classify_angle, exact_angle_test_2x2, principal_angle, EigClass, ExactAngle,
    RationalAngle,
};
pub use bound::{compute_bound_k, BoundK, BoundMode, BoundOutcome};
pub use stability::{roots_inside_unit_disc, validate_spectrum, SpectrumReport, SpectrumViolation};
pub use sw::{sw_criterion, NormalCheck, SwOutcome, SwVerdict, SW_POWER_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Eigenvalues closer than this (relative to their modulus) are one value.
const DISTINCT_REL_TOL: f64 = 1e-6;

/// Distinct eigenvalues of `T^-1`, classified.
///
/// The eigenvalues are the reciprocals of those of `T`. For a rational 2x2
/// matrix with a complex pair, presence and denominator of the rational
/// angle come from the exact recurrence instead of the float scan.
pub fn inverse_spectrum<S: Scalar>(t: &Matrix<S>, tol: &ToleranceConfig) -> Vec<EigClass> {
    let mut distinct: Vec<Complex64> = Vec::new();
    for lambda in eigenvalues(t) {
        // + 0.0 clears negative zeros so reports print the same value
        let inv = lambda.inv() + Complex64::new(0.0, 0.0);
        if !distinct
            .iter()
            .any(|d| (d - inv).norm() <= DISTINCT_REL_TOL * inv.norm().max(1.0))
        {
            distinct.push(inv);
        }
    }
    let exact = exact_pair_angle(t, tol.denom_max);
    distinct
        .into_iter()
        .map(|lambda| {
            let mut class = classify_angle(lambda, tol);
            if let (Some(found), false) = (exact, class.is_real()) {
                class.rational_angle = found.map(|n| {
                    let p = (class.angle / std::f64::consts::PI * n as f64).round() as i64;
                    RationalAngle { p, n }
                });
            }
            class
        })
        .collect()
}

/// `Some(Some(n))` when the exact 2x2 test certifies denominator `n`,
/// `Some(None)` when it rules out denominators up to `denom_max`, `None`
/// when the test does not apply.
fn exact_pair_angle<S: Scalar>(t: &Matrix<S>, denom_max: u32) -> Option<Option<u32>> {
    if !S::is_exact() || t.dim() != 2 {
        return None;
    }
    let rows: Option<Vec<Vec<BigRational>>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_rational).collect())
        .collect();
    let exact = Matrix::from_rows(rows?).ok()?;
    let inv = exact.inverse(0.0).ok()?;
    match exact_angle_test_2x2(&inv, denom_max).ok()? {
        ExactAngle::Rational { n, .. } if n <= denom_max => Some(Some(n)),
        _ => Some(None),
    }
}
