use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use thiserror::Error;

use super::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Column vector of length 1..=3.
#[derive(Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Vector(coords.iter().map(|&(n, d)| S::from_ratio(n, d)).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&v| S::from_int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.0.iter().all(|c| c.is_zero_within(tol))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b).collect())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * factor).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn dot(&self, other: &Self) -> S {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// Cross product for 3-vectors.
    pub fn cross(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        Vector(vec![
            a[1].clone() * &b[2] - a[2].clone() * &b[1],
            a[2].clone() * &b[0] - a[0].clone() * &b[2],
            a[0].clone() * &b[1] - a[1].clone() * &b[0],
        ])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    pub fn norm_f64(&self) -> f64 {
        self.0.iter().map(|c| c.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.0.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Lexicographic comparison of coordinates.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp_scalar(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&S) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: fmt::Debug> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Scalar::to_text).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Square row-major matrix of size 1..=3.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LinalgError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs; panics on ragged input.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| S::from_ratio(a, b)).collect())
            .collect();
        Self::from_rows(rows).expect("square matrix")
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![S::one(); n])
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        let mut entries = vec![S::zero(); n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = d.clone();
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| self.get(idx % n, idx / n).clone())
            .collect();
        Matrix { n, entries }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.clone() * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other.n)?;
        Ok(Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other.n)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { n, entries })
    }

    /// `self^power` by binary exponentiation; `power = 0` gives the identity.
    pub fn pow(&self, power: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        let mut e = power;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    pub fn apply(&self, v: &Vector<S>) -> Result<Vector<S>, LinalgError> {
        self.check_dim(v.dim())?;
        let n = self.n;
        Ok(Vector::new(
            (0..n)
                .map(|i| {
                    self.entries[i * n..(i + 1) * n]
                        .iter()
                        .zip(v.coords())
                        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
                })
                .collect(),
        ))
    }

    pub fn det(&self) -> S {
        let e = |i, j| self.get(i, j).clone();
        match self.n {
            0 => S::one(),
            1 => e(0, 0),
            2 => e(0, 0) * &e(1, 1) - e(0, 1) * &e(1, 0),
            3 => {
                e(0, 0) * &(e(1, 1) * &e(2, 2) - e(1, 2) * &e(2, 1))
                    - e(0, 1) * &(e(1, 0) * &e(2, 2) - e(1, 2) * &e(2, 0))
                    + e(0, 2) * &(e(1, 0) * &e(2, 1) - e(1, 1) * &e(2, 0))
            }
            _ => unimplemented!("determinants are only needed for n <= 3"),
        }
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Coefficients `[c0, c1, .., c_{n-1}]` of the monic characteristic
    /// polynomial `det(xI - A) = x^n + c_{n-1} x^{n-1} + .. + c0`.
    pub fn char_poly(&self) -> Vec<S> {
        match self.n {
            1 => vec![-self.get(0, 0).clone()],
            2 => vec![self.det(), -self.trace()],
            3 => {
                let e = |i, j| self.get(i, j).clone();
                let minors = e(0, 0) * &e(1, 1) - e(0, 1) * &e(1, 0) + e(0, 0) * &e(2, 2)
                    - e(0, 2) * &e(2, 0)
                    + e(1, 1) * &e(2, 2)
                    - e(1, 2) * &e(2, 1);
                vec![-self.det(), minors, -self.trace()]
            }
            _ => unimplemented!("characteristic polynomials are only needed for n <= 3"),
        }
    }

    /// Solve `self * x = b` by Gaussian elimination. Rational mode pivots on
    /// the first nonzero entry; float mode uses partial pivoting and treats a
    /// pivot below `eps` (relative to the matrix scale) as singular.
    pub fn solve(&self, b: &Vector<S>, eps: f64) -> Result<Vector<S>, LinalgError> {
        self.check_dim(b.dim())?;
        let n = self.n;
        let scale = self
            .entries
            .iter()
            .map(|e| e.to_f64().abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut a: Vec<Vec<S>> = self.rows();
        let mut rhs: Vec<S> = b.coords().to_vec();
        for col in 0..n {
            let pivot = if S::is_exact() {
                (col..n).find(|&r| !a[r][col].is_zero())
            } else {
                (col..n)
                    .max_by(|&r1, &r2| {
                        a[r1][col]
                            .abs()
                            .total_cmp_scalar(&a[r2][col].abs())
                            .then(r2.cmp(&r1))
                    })
                    .filter(|&r| !a[r][col].is_zero_within(eps * scale))
            };
            let pivot = pivot.ok_or(LinalgError::Singular)?;
            a.swap(col, pivot);
            rhs.swap(col, pivot);
            for row in col + 1..n {
                if a[row][col].is_zero() {
                    continue;
                }
                let factor = a[row][col].clone() / a[col][col].clone();
                let (upper, lower) = a.split_at_mut(row);
                for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *x = x.clone() - factor.clone() * p;
                }
                let delta = factor * &rhs[col];
                rhs[row] = rhs[row].clone() - delta;
            }
        }
        let mut x = vec![S::zero(); n];
        for row in (0..n).rev() {
            let mut acc = rhs[row].clone();
            for k in row + 1..n {
                acc = acc - a[row][k].clone() * &x[k];
            }
            x[row] = acc / a[row][row].clone();
        }
        Ok(Vector::new(x))
    }

    pub fn inverse(&self, eps: f64) -> Result<Self, LinalgError> {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            cols.push(self.solve(&Vector::new(e), eps)?);
        }
        let entries = (0..n * n).map(|idx| cols[idx % n][idx / n].clone()).collect();
        Ok(Matrix { n, entries })
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Maximum absolute row sum.
    pub fn inf_norm_f64(&self) -> f64 {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|e| e.to_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, other: usize) -> Result<(), LinalgError> {
        if self.n == other {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.n,
                found: other,
            })
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                let parts: Vec<String> = r.iter().map(Scalar::to_text).collect();
                format!("[{}]", parts.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn identity_power_is_identity() {
        let i2 = Matrix::<Q>::identity(2);
        assert_eq!(i2.pow(5), i2);
        assert_eq!(i2.pow(0), i2);
    }

    #[test]
    fn diagonal_power() {
        let d = Matrix::<Q>::from_ratios(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 3)]]);
        let expected = Matrix::<Q>::from_ratios(&[&[(1, 4), (0, 1)], &[(0, 1), (1, 9)]]);
        assert_eq!(d.pow(2), expected);
    }

    #[test]
    fn twin_dragon_matrix_eighth_power_is_scalar() {
        let t = Matrix::<Q>::from_ratios(&[&[(1, 2), (-1, 2)], &[(1, 2), (1, 2)]]);
        // T^2 = [[0,-1/2],[1/2,0]], T^4 = -1/4 I, T^8 = 1/16 I
        let mut by_hand = Matrix::identity(2);
        for _ in 0..8 {
            by_hand = by_hand.mul(&t).unwrap();
        }
        let expected = Matrix::identity(2).scale(&Q::from_ratio(1, 16));
        assert_eq!(by_hand, expected);
        assert_eq!(t.pow(8), expected);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = Matrix::<Q>::identity(2);
        let b = Matrix::<Q>::identity(3);
        assert!(matches!(a.mul(&b), Err(LinalgError::DimensionMismatch { .. })));
        assert!(a.apply(&Vector::zeros(3)).is_err());
    }

    #[test]
    fn solve_examples() {
        let i2 = Matrix::<Q>::identity(2);
        let b = Vector::<Q>::from_ints(&[3, 4]);
        assert_eq!(i2.solve(&b, 1e-9).unwrap(), b);

        let half = i2.sub(&i2.scale(&Q::from_ratio(1, 2))).unwrap();
        let x = half.solve(&Vector::from_ratios(&[(1, 2), (0, 1)]), 1e-9).unwrap();
        assert_eq!(x, Vector::from_ints(&[1, 0]));

        let singular = Matrix::<Q>::from_ratios(&[&[(1, 1), (1, 1)], &[(2, 1), (2, 1)]]);
        assert_eq!(
            singular.solve(&Vector::from_ints(&[1, 1]), 1e-9),
            Err(LinalgError::Singular)
        );
        let singular_f = singular.to_f64();
        assert_eq!(
            singular_f.solve(&Vector::from_ints(&[1, 1]), 1e-9),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn solve_needs_row_swap() {
        let a = Matrix::<Q>::from_ratios(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let x = a.solve(&Vector::from_ints(&[5, 7]), 1e-9).unwrap();
        assert_eq!(x, Vector::from_ints(&[7, 5]));
    }

    #[test]
    fn char_poly_of_3x3() {
        // diag(1,2,3): (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let d = Matrix::<Q>::diagonal(&[Q::from_int(1), Q::from_int(2), Q::from_int(3)]);
        let c = d.char_poly();
        assert_eq!(c, vec![Q::from_int(-6), Q::from_int(11), Q::from_int(-6)]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::<Q>::from_ratios(&[
            &[(2, 1), (1, 3), (0, 1)],
            &[(1, 1), (1, 1), (-1, 2)],
            &[(0, 1), (3, 1), (1, 4)],
        ]);
        let inv = a.inverse(1e-9).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
    }
}
