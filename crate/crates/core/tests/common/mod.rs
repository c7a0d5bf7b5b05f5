#![allow(dead_code)]

use fractal_hull::ifs::validate_model;
use fractal_hull::numeric::{Matrix, Scalar, ToleranceConfig, Vector};
use fractal_hull::{BigRational, RationalModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

pub fn model(t: Matrix<Q>, digits: &[&[i64]]) -> RationalModel {
    let d = digits.iter().map(|c| Vector::from_ints(c)).collect();
    validate_model(t, d, ToleranceConfig::default()).unwrap()
}

pub fn sierpinski() -> RationalModel {
    model(Matrix::identity(2).scale(&q(1, 2)), &[&[0, 0], &[1, 0], &[0, 1]])
}

pub fn anisotropic() -> RationalModel {
    model(
        Matrix::from_ratios(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 3)]]),
        &[&[0, 0], &[1, 0], &[0, 1]],
    )
}

pub fn twin_dragon() -> RationalModel {
    model(
        Matrix::from_ratios(&[&[(1, 2), (-1, 2)], &[(1, 2), (1, 2)]]),
        &[&[0, 0], &[1, 0]],
    )
}

fn small_rational(rng: &mut ChaCha8Rng, max_abs_num: i64) -> Q {
    let den = rng.gen_range(1..=4);
    q(rng.gen_range(-max_abs_num..=max_abs_num), den)
}

/// Random contracting rational model: n = 2, q in {2, 3}, entries with
/// denominators at most 4. Digits are distinct.
pub fn random_model(rng: &mut ChaCha8Rng) -> RationalModel {
    loop {
        let rows: Vec<Vec<Q>> = (0..2)
            .map(|_| (0..2).map(|_| small_rational(rng, 3)).collect())
            .collect();
        let t = Matrix::from_rows(rows).unwrap();
        let count = rng.gen_range(2..=3);
        let mut digits: Vec<Vector<Q>> = Vec::new();
        while digits.len() < count {
            let d = Vector::new(vec![small_rational(rng, 4), small_rational(rng, 4)]);
            if !digits.contains(&d) {
                digits.push(d);
            }
        }
        if let Ok(m) = validate_model(t, digits, ToleranceConfig::default()) {
            return m;
        }
    }
}

/// The seeded 100-model corpus.
pub fn corpus() -> Vec<RationalModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..100).map(|_| random_model(&mut rng)).collect()
}

/// Random integer matrix with determinant +-1.
pub fn unimodular(rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let mut s = Matrix::<Q>::identity(2);
    for _ in 0..3 {
        let a = rng.gen_range(-2..=2);
        let b = rng.gen_range(-2..=2);
        let upper = Matrix::from_ratios(&[&[(1, 1), (a, 1)], &[(0, 1), (1, 1)]]);
        let lower = Matrix::from_ratios(&[&[(1, 1), (0, 1)], &[(b, 1), (1, 1)]]);
        s = s.mul(&upper).unwrap().mul(&lower).unwrap();
    }
    if rng.gen_bool(0.5) {
        s = s.mul(&Matrix::from_ratios(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]])).unwrap();
    }
    s
}

/// `(S T S^-1, {S d_j})` in original coordinates.
pub fn conjugate(m: &RationalModel, s: &Matrix<Q>) -> RationalModel {
    let s_inv = s.inverse(0.0).unwrap();
    let t = s.mul(m.matrix()).unwrap().mul(&s_inv).unwrap();
    let digits = m
        .original_digits()
        .iter()
        .map(|d| s.apply(d).unwrap())
        .collect();
    validate_model(t, digits, ToleranceConfig::default()).unwrap()
}

/// The model with every original digit translated by `shift`.
pub fn translate(m: &RationalModel, shift: &Vector<Q>) -> RationalModel {
    let digits = m.original_digits().iter().map(|d| d.add(shift)).collect();
    validate_model(m.matrix().clone(), digits, ToleranceConfig::default()).unwrap()
}

pub fn sorted<S: Scalar>(mut pts: Vec<Vector<S>>) -> Vec<Vector<S>> {
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts
}
