use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which arithmetic a model is analysed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticMode {
    Rational,
    Float,
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticMode::Rational => f.write_str("rational"),
            ArithmeticMode::Float => f.write_str("float"),
        }
    }
}

/// Real scalar field used by every geometric and linear-algebra routine.
///
/// Two implementations exist: [`BigRational`] (exact, canonical reduced
/// form with positive denominator) and `f64`. Predicates take a tolerance
/// argument that the exact implementation ignores, so the same generic code
/// serves both modes.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Num
    + Signed
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: ArithmeticMode;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(value: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value of the scalar, if it is finite.
    fn to_rational(&self) -> Option<BigRational>;

    /// Zero test: exact in rational mode, `|x| <= tol` in float mode.
    fn is_zero_within(&self, tol: f64) -> bool;

    /// Canonical text form: `"p/q"` (or `"p"`) for rationals, shortest
    /// round-trip decimal for floats.
    fn to_text(&self) -> String;

    fn is_exact() -> bool {
        Self::MODE == ArithmeticMode::Rational
    }

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// Sign with a dead zone of width `tol` in float mode.
    fn sign_within(&self, tol: f64) -> Ordering {
        if self.is_zero_within(tol) {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Total order used for deterministic sorting (NaN-free inputs assumed).
    fn total_cmp_scalar(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Scalar for BigRational {
    const MODE: ArithmeticMode = ArithmeticMode::Rational;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn to_text(&self) -> String {
        if self.denom() == &BigInt::from(1) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const MODE: ArithmeticMode = ArithmeticMode::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(value: &BigRational) -> Self {
        Scalar::to_f64(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_f64(*self)
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

/// Parse an exact rational from `"p/q"`, `"p"`, or a terminating decimal.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Ok(int) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(int));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let r = q(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.to_text(), "-3/4");
        assert_eq!(q(4, 2).to_text(), "2");
    }

    #[test]
    fn parses_fraction_integer_and_decimal_forms() {
        assert_eq!(parse_rational("1/2"), Some(q(1, 2)));
        assert_eq!(parse_rational(" -3 "), Some(q(-3, 1)));
        assert_eq!(parse_rational("0.125"), Some(q(1, 8)));
        assert_eq!(parse_rational("-2.5e-1"), Some(q(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn float_sign_has_dead_zone() {
        assert_eq!(1e-12f64.sign_within(1e-9), Ordering::Equal);
        assert_eq!((-1e-3f64).sign_within(1e-9), Ordering::Less);
        assert_eq!(q(1, 1_000_000_000_000).sign_within(1.0), Ordering::Greater);
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = BigRational::new(
            num_traits::pow(BigInt::from(3), 2000) + BigInt::from(1),
            num_traits::pow(BigInt::from(3), 1999) * BigInt::from(2),
        );
        assert!((Scalar::to_f64(&big) - 1.5).abs() < 1e-12);
    }
}
