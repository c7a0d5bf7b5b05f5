use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::{Complex64, Matrix, Scalar, ToleranceConfig};

use super::SpectralError;

/// Denominators up to this are always scanned exhaustively.
const EXHAUSTIVE_DENOMINATORS: u32 = 16;

/// Argument `pi * p / n` in lowest terms, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    pub p: i64,
    pub n: u32,
}

/// An eigenvalue of `T^-1` together with its polar data.
#[derive(Debug, Clone, PartialEq)]
pub struct EigClass {
    pub lambda: Complex64,
    pub modulus: f64,
    /// Argument in `(-pi, pi]`.
    pub angle: f64,
    pub rational_angle: Option<RationalAngle>,
}

impl EigClass {
    pub fn is_real(&self) -> bool {
        self.lambda.im == 0.0
    }
}

/// Argument normalized to `(-pi, pi]`.
pub fn principal_angle(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        PI
    } else {
        a + 0.0
    }
}

/// Classify the argument of `lambda` as a rational multiple of pi, with the
/// smallest admissible denominator `n <= denom_max`.
pub fn classify_angle(lambda: Complex64, tol: &ToleranceConfig) -> EigClass {
    let modulus = lambda.norm();
    let angle = principal_angle(lambda);
    let rational_angle = if lambda.im == 0.0 {
        Some(if lambda.re >= 0.0 {
            RationalAngle { p: 0, n: 1 }
        } else {
            RationalAngle { p: 1, n: 1 }
        })
    } else {
        rational_multiple_of_pi(angle, tol.angle_tol, tol.denom_max)
    };
    EigClass {
        lambda,
        modulus,
        angle,
        rational_angle,
    }
}

fn candidate(angle: f64, n: u32, angle_tol: f64) -> Option<RationalAngle> {
    let p = (angle / PI * n as f64).round();
    let err = (angle - PI * p / n as f64).abs();
    (err <= angle_tol).then(|| {
        let p = p as i64;
        let g = p.gcd(&(n as i64)).max(1);
        RationalAngle {
            p: p / g,
            n: (n as i64 / g) as u32,
        }
    })
}

fn rational_multiple_of_pi(angle: f64, angle_tol: f64, denom_max: u32) -> Option<RationalAngle> {
    let small = denom_max.min(EXHAUSTIVE_DENOMINATORS);
    if let Some(found) = (1..=small).find_map(|n| candidate(angle, n, angle_tol)) {
        return Some(found);
    }
    if denom_max <= small {
        return None;
    }
    // Legendre: |x - p/n| < 1/(2 n^2) forces p/n to be a convergent of x.
    let convergents_suffice = angle_tol / PI < 1.0 / (2.0 * (denom_max as f64).powi(2));
    if convergents_suffice {
        convergent_denominators(angle / PI, denom_max)
            .into_iter()
            .filter(|&n| n > small)
            .find_map(|n| candidate(angle, n, angle_tol))
    } else {
        (small + 1..=denom_max).find_map(|n| candidate(angle, n, angle_tol))
    }
}

/// Denominators of the continued-fraction convergents of `x`, up to `max`.
fn convergent_denominators(x: f64, max: u32) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::new();
    let mut rest = x.abs();
    // k_{i-2}, k_{i-1}
    let (mut older, mut old) = (1u64, 0u64);
    for _ in 0..64 {
        let a = rest.floor();
        let k = a as u64 * old + older;
        if k > max as u64 {
            break;
        }
        if k > 0 && out.last() != Some(&(k as u32)) {
            out.push(k as u32);
        }
        let frac = rest - a;
        if frac < 1e-12 {
            break;
        }
        older = old;
        old = k;
        rest = 1.0 / frac;
    }
    out
}

/// Smallest `|angle - pi p / n|` over all `n <= denom_max`.
pub fn angle_residual(angle: f64, denom_max: u32) -> f64 {
    (1..=denom_max)
        .map(|n| {
            let p = (angle / PI * n as f64).round();
            (angle - PI * p / n as f64).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of the exact rational-angle test for a 2x2 rational matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactAngle {
    /// `lambda^k` is real for the smallest such `k`; the argument is then
    /// `pi * p / k` in lowest terms, so the denominator is `n = k`.
    Rational { k: u32, n: u32 },
    /// No `k <= bound` makes `lambda^k` real.
    IrrationalUpTo(u32),
}

/// Exact test whether the complex eigenvalues of a rational 2x2 matrix have
/// arguments that are rational multiples of pi.
///
/// With trace `t` and determinant `d`, `lambda^2 = t lambda - d`, so
/// `lambda^k = a_k lambda + b_k` with `a_{k+1} = t a_k + b_k`,
/// `b_{k+1} = -d a_k`. For non-real `lambda`, `lambda^k` is real iff `a_k = 0`.
/// Scans `k <= 2 * denom_max`.
pub fn exact_angle_test_2x2(
    t_inv: &Matrix<BigRational>,
    denom_max: u32,
) -> Result<ExactAngle, SpectralError> {
    if t_inv.dim() != 2 {
        return Err(SpectralError::Precondition(format!(
            "exact angle test needs a 2x2 matrix, got {0}x{0}",
            t_inv.dim()
        )));
    }
    let t = t_inv.trace();
    let d = t_inv.det();
    let disc = t.clone() * &t - BigRational::from_int(4) * &d;
    if !disc.is_negative() {
        return Err(SpectralError::Precondition(
            "exact angle test needs a complex-conjugate eigenvalue pair".into(),
        ));
    }
    let bound = 2 * denom_max;
    let (mut a, mut b) = (BigRational::from_int(1), BigRational::zero());
    for k in 1..=bound {
        if a.is_zero() {
            return Ok(ExactAngle::Rational { k, n: k });
        }
        let next_a = t.clone() * &a + &b;
        b = -(d.clone() * &a);
        a = next_a;
    }
    Ok(ExactAngle::IrrationalUpTo(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn positive_and_negative_reals() {
        let c = classify_angle(Complex64::new(2.0, 0.0), &tol());
        assert_eq!(c.modulus, 2.0);
        assert_eq!(c.rational_angle, Some(RationalAngle { p: 0, n: 1 }));
        let c = classify_angle(Complex64::new(-3.0, 0.0), &tol());
        assert_eq!(c.rational_angle, Some(RationalAngle { p: 1, n: 1 }));
        assert_eq!(c.angle, PI);
        let c = classify_angle(Complex64::new(-3.0, -0.0), &tol());
        assert_eq!(c.angle, PI);
    }

    #[test]
    fn one_plus_i_is_a_quarter() {
        let c = classify_angle(Complex64::new(1.0, 1.0), &tol());
        assert!((c.modulus - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.rational_angle, Some(RationalAngle { p: 1, n: 4 }));
        let c = classify_angle(Complex64::new(1.0, -1.0), &tol());
        assert_eq!(c.rational_angle, Some(RationalAngle { p: -1, n: 4 }));
    }

    #[test]
    fn one_radian_is_not_rational() {
        let lambda = Complex64::from_polar(2.0, 1.0);
        let c = classify_angle(lambda, &tol());
        assert_eq!(c.rational_angle, None);
        // best candidate 7/22 misses by about 4e-4 rad
        let miss = (1.0 - PI * 7.0 / 22.0).abs();
        assert!(miss > 3.9e-4 && miss < 4.1e-4);
        assert!(angle_residual(1.0, 64) > 1e-6);
    }

    #[test]
    fn large_denominator_found_through_convergents() {
        let angle = PI * 17.0 / 59.0;
        let c = classify_angle(Complex64::from_polar(1.5, angle), &tol());
        assert_eq!(c.rational_angle, Some(RationalAngle { p: 17, n: 59 }));
        // beyond denom_max
        let small = ToleranceConfig {
            denom_max: 40,
            ..tol()
        };
        assert_eq!(classify_angle(Complex64::from_polar(1.5, angle), &small).rational_angle, None);
    }

    #[test]
    fn loose_tolerance_uses_exhaustive_scan() {
        let loose = ToleranceConfig {
            angle_tol: 1e-2,
            ..tol()
        };
        // 0.3 pi + 0.005: within 0.01 of 3/10 but also of nothing smaller
        let c = classify_angle(Complex64::from_polar(1.0, 0.3 * PI + 0.005), &loose);
        assert_eq!(c.rational_angle.map(|r| r.n), Some(10));
    }

    #[test]
    fn convergents_of_one_over_pi() {
        let ks = convergent_denominators(1.0 / PI, 400);
        assert_eq!(ks, vec![1, 3, 22, 333, 355]);
    }

    #[test]
    fn exact_test_examples() {
        let twin = Matrix::<Q>::from_ratios(&[&[(1, 1), (-1, 1)], &[(1, 1), (1, 1)]]);
        assert_eq!(exact_angle_test_2x2(&twin, 64).unwrap(), ExactAngle::Rational { k: 4, n: 4 });

        let quarter = Matrix::<Q>::from_ratios(&[&[(0, 1), (-2, 1)], &[(2, 1), (0, 1)]]);
        assert_eq!(exact_angle_test_2x2(&quarter, 64).unwrap(), ExactAngle::Rational { k: 2, n: 2 });

        let irrational = Matrix::<Q>::from_ratios(&[&[(1, 1), (-2, 1)], &[(1, 1), (1, 1)]]);
        assert_eq!(exact_angle_test_2x2(&irrational, 64).unwrap(), ExactAngle::IrrationalUpTo(128));
    }

    #[test]
    fn exact_test_rejects_real_spectrum() {
        let diag = Matrix::<Q>::from_ratios(&[&[(2, 1), (0, 1)], &[(0, 1), (3, 1)]]);
        assert!(exact_angle_test_2x2(&diag, 64).is_err());
        assert!(exact_angle_test_2x2(&Matrix::<Q>::identity(3), 64).is_err());
    }
}
