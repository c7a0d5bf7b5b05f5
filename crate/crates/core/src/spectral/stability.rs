use thiserror::Error;

use crate::numeric::{spectral_radius, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumViolation {
    #[error("matrix is singular (det = 0)")]
    NonSingularityFailed,
    #[error("matrix is not a contraction: spectral radius {rho} >= 1")]
    NotContractingFailed { rho: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub spectral_radius: f64,
    pub warnings: Vec<String>,
}

/// Schur stability of the characteristic polynomial (all roots strictly
/// inside the unit disc), decided from its coefficients by the Jury
/// conditions. Exact for rational matrices.
pub fn roots_inside_unit_disc<S: Scalar>(t: &Matrix<S>) -> bool {
    let c = t.char_poly();
    let one = S::one();
    let eval = |x: &S| {
        c.iter()
            .rev()
            .fold(one.clone(), |acc, coeff| acc * x + coeff)
    };
    let minus_one = -one.clone();
    match t.dim() {
        1 => c[0].abs() < one,
        2 => eval(&one).is_positive() && eval(&minus_one).is_positive() && c[0].abs() < one,
        3 => {
            let (a0, a1, a2) = (&c[0], &c[1], &c[2]);
            let b0 = a0.clone() * a0 - &one;
            let b2 = a0.clone() * a2 - a1;
            eval(&one).is_positive()
                && eval(&minus_one).is_negative()
                && a0.abs() < one
                && b0.abs() > b2.abs()
        }
        n => unimplemented!("stability test only for n <= 3, got {n}"),
    }
}

/// Check that `T` is nonsingular with spectral radius below one.
///
/// In rational mode both decisions are exact. In float mode the determinant
/// is compared against `eps_geom` (scaled by the matrix entries) and a
/// warning is issued when the radius is within 1e-9 of one.
pub fn validate_spectrum<S: Scalar>(
    t: &Matrix<S>,
    eps_geom: f64,
) -> Result<SpectrumReport, SpectrumViolation> {
    let n = t.dim();
    let scale = t.inf_norm_f64().max(f64::MIN_POSITIVE);
    if t.det().is_zero_within(eps_geom * scale.powi(n as i32)) {
        return Err(SpectrumViolation::NonSingularityFailed);
    }
    let rho = spectral_radius(t);
    let contracting = if S::is_exact() {
        roots_inside_unit_disc(t)
    } else {
        rho < 1.0
    };
    if !contracting {
        return Err(SpectrumViolation::NotContractingFailed { rho });
    }
    let mut warnings = Vec::new();
    if !S::is_exact() && 1.0 - rho < 1e-9 {
        warnings.push(format!(
            "spectral radius {rho} is within 1e-9 of 1; the contraction is numerically marginal"
        ));
    }
    Ok(SpectrumReport {
        spectral_radius: rho,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn half_identity_is_ok() {
        let t = Matrix::<Q>::identity(2).scale(&Q::from_ratio(1, 2));
        let r = validate_spectrum(&t, 1e-9).unwrap();
        assert!((r.spectral_radius - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_is_not_contracting() {
        assert!(matches!(
            validate_spectrum(&Matrix::<Q>::identity(2), 1e-9),
            Err(SpectrumViolation::NotContractingFailed { .. })
        ));
        assert!(matches!(
            validate_spectrum(&Matrix::<f64>::identity(2), 1e-9),
            Err(SpectrumViolation::NotContractingFailed { .. })
        ));
    }

    #[test]
    fn zero_column_is_singular() {
        let t = Matrix::<Q>::from_ratios(&[&[(1, 2), (0, 1)], &[(1, 2), (0, 1)]]);
        assert_eq!(validate_spectrum(&t, 1e-9), Err(SpectrumViolation::NonSingularityFailed));
    }

    #[test]
    fn exact_rotation_on_unit_circle() {
        // eigenvalues (3 +- 4i)/5 have modulus exactly one
        let t = Matrix::<Q>::from_ratios(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]);
        assert!(!roots_inside_unit_disc(&t));
        let shrunk = t.scale(&Q::from_ratio(999, 1000));
        assert!(roots_inside_unit_disc(&shrunk));
    }

    #[test]
    fn jury_cubic_matches_radius() {
        let cases: [&[&[(i64, i64)]]; 4] = [
            &[&[(1, 2), (0, 1), (0, 1)], &[(0, 1), (1, 2), (0, 1)], &[(0, 1), (0, 1), (1, 2)]],
            &[&[(0, 1), (0, 1), (2, 1)], &[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)]],
            &[&[(1, 3), (1, 1), (0, 1)], &[(0, 1), (-1, 2), (1, 4)], &[(1, 5), (0, 1), (2, 3)]],
            &[&[(-9, 10), (0, 1), (0, 1)], &[(0, 1), (0, 1), (-1, 2)], &[(0, 1), (1, 2), (0, 1)]],
        ];
        for rows in cases {
            let t = Matrix::<Q>::from_ratios(rows);
            assert_eq!(roots_inside_unit_disc(&t), spectral_radius(&t) < 1.0, "{t}");
        }
    }

    #[test]
    fn marginal_float_radius_warns() {
        let t = Matrix::<f64>::identity(2).scale(&(1.0 - 1e-12));
        let r = validate_spectrum(&t, 1e-9).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }
}
