//! Eigenvalues of 1x1, 2x2 and 3x3 matrices from their characteristic
//! polynomials, plus the norms derived from them.
//!
//! Rational inputs keep the polynomial coefficients exact: discriminant signs
//! are decided exactly and cubic rational roots are found by divisor search
//! before any floating point is involved.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Matrix, Scalar};

/// Largest |constant| or |leading| integer coefficient for which rational
/// root candidates are enumerated.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Eigenvalues with algebraic multiplicity (always `n` values).
pub fn eigenvalues<S: Scalar>(t: &Matrix<S>) -> Vec<Complex64> {
    let coeffs = t.char_poly();
    match t.dim() {
        1 => vec![Complex64::new(-coeffs[0].to_f64(), 0.0)],
        2 => quadratic_roots(&coeffs[1], &coeffs[0]).to_vec(),
        3 => cubic_roots(&coeffs),
        n => unimplemented!("eigenvalues are only supported for n <= 3, got {n}"),
    }
}

/// `|det(T - lambda I)|`, i.e. the characteristic polynomial residual.
pub fn eigen_residual<S: Scalar>(t: &Matrix<S>, lambda: Complex64) -> f64 {
    let coeffs: Vec<f64> = t.char_poly().iter().map(Scalar::to_f64).collect();
    eval_monic(&coeffs, lambda).norm()
}

pub fn spectral_radius<S: Scalar>(t: &Matrix<S>) -> f64 {
    eigenvalues(t).iter().map(|l| l.norm()).fold(0.0, f64::max)
}

/// Euclidean operator norm: largest singular value, `sqrt(rho(T^T T))`.
pub fn operator_norm<S: Scalar>(t: &Matrix<S>) -> f64 {
    let gram = t.transpose().mul(t).expect("square");
    spectral_radius(&gram).sqrt()
}

fn eval_monic(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(1.0, 0.0), |acc, c| acc * x + c)
}

/// Roots of `x^2 + b x + c`.
fn quadratic_roots<S: Scalar>(b: &S, c: &S) -> [Complex64; 2] {
    let disc = b.clone() * b - S::from_int(4) * c;
    let (bf, cf, df) = (b.to_f64(), c.to_f64(), disc.to_f64());
    let negligible = if S::is_exact() {
        disc.is_zero()
    } else {
        df.abs() <= 1e-12 * (bf * bf + 4.0 * cf.abs())
    };
    if negligible {
        let r = Complex64::new(-bf / 2.0, 0.0);
        return [r, r];
    }
    if disc.is_positive() {
        let s = df.sqrt();
        let sign = if bf >= 0.0 { 1.0 } else { -1.0 };
        let big = -(bf + sign * s) / 2.0;
        let small = if big != 0.0 { cf / big } else { -bf - big };
        let (r1, r2) = if big >= small { (big, small) } else { (small, big) };
        [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let im = (-df).sqrt() / 2.0;
        [Complex64::new(-bf / 2.0, im), Complex64::new(-bf / 2.0, -im)]
    }
}

/// Roots of `x^3 + c2 x^2 + c1 x + c0` with `coeffs = [c0, c1, c2]`.
fn cubic_roots<S: Scalar>(coeffs: &[S]) -> Vec<Complex64> {
    if S::is_exact() {
        let exact: Vec<BigRational> = coeffs.iter().filter_map(Scalar::to_rational).collect();
        if let Some(root) = rational_cubic_root(&exact) {
            // x^3 + c2 x^2 + c1 x + c0 = (x - r)(x^2 + b1 x + b0)
            let b1 = exact[2].clone() + &root;
            let b0 = exact[1].clone() + root.clone() * &b1;
            let mut roots = vec![Complex64::new(Scalar::to_f64(&root), 0.0)];
            roots.extend(quadratic_roots(&b1, &b0));
            return roots;
        }
    }
    let c: Vec<f64> = coeffs.iter().map(Scalar::to_f64).collect();
    let real = real_cubic_root(&c);
    let b1 = c[2] + real;
    let b0 = c[1] + real * b1;
    let mut roots = vec![Complex64::new(real, 0.0)];
    roots.extend(quadratic_roots(&b1, &b0));
    for r in roots.iter_mut() {
        *r = polish(&c, *r);
    }
    roots
}

/// A rational root of the monic rational cubic, by the rational root theorem.
fn rational_cubic_root(coeffs: &[BigRational]) -> Option<BigRational> {
    if coeffs[0].is_zero() {
        return Some(BigRational::zero());
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lead = lcm.clone();
    let constant = (coeffs[0].clone() * BigRational::from_integer(lcm)).to_integer();
    let lead_divs = small_divisors(&lead)?;
    let const_divs = small_divisors(&constant)?;
    let eval = |x: &BigRational| {
        coeffs
            .iter()
            .rev()
            .fold(BigRational::one(), |acc, c| acc * x + c)
    };
    for q in &lead_divs {
        for p in &const_divs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                if eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn small_divisors(value: &BigInt) -> Option<Vec<u64>> {
    let v = value.abs().to_u64().filter(|&v| v <= DIVISOR_SEARCH_LIMIT)?;
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            divs.push(d);
            if d != v / d {
                divs.push(v / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// A real root of the monic cubic: Newton from three spread starting points,
/// falling back to bisection on the Cauchy bracket.
fn real_cubic_root(c: &[f64]) -> f64 {
    let p = |x: f64| ((x + c[2]) * x + c[1]) * x + c[0];
    let dp = |x: f64| (3.0 * x + 2.0 * c[2]) * x + c[1];
    let bound = 1.0 + c.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let scale = 1.0 + c.iter().map(|v| v.abs()).sum::<f64>();
    for start in [bound, -bound, 0.0] {
        let mut x = start;
        for _ in 0..200 {
            let d = dp(x);
            if d == 0.0 {
                break;
            }
            let step = p(x) / d;
            x -= step;
            if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        if x.is_finite() && x.abs() <= bound && p(x).abs() <= 1e-12 * scale {
            return x;
        }
    }
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn polish(c: &[f64], root: Complex64) -> Complex64 {
    let mut z = root;
    for _ in 0..3 {
        let pz = eval_monic(c, z);
        let dz = (z * 3.0 + 2.0 * c[2]) * z + c[1];
        if dz.norm() <= 1e-8 * (1.0 + z.norm()) {
            break;
        }
        let next = z - pz / dz;
        if eval_monic(c, next).norm() < pz.norm() {
            z = next;
        } else {
            break;
        }
    }
    if root.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}
