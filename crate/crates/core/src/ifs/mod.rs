//! Single-matrix IFS `phi_j(x) = T(x + d_j)`, its digit addresses, the
//! vertex recursion for `conv(A_k)` and attractor size bounds.

mod address;
mod bounds;
mod ledger;

use thiserror::Error;

use crate::numeric::{Matrix, Scalar, ToleranceConfig, Vector};
use crate::spectral::{validate_spectrum, SpectrumViolation};

pub use address::{AddressError, EpAddress, FiniteAddress};
pub use bounds::{attractor_radius_bound, tail_error_bound, RadiusError};
pub use ledger::{brute_force_vertices, ledger_at, step_hull, BudgetExceeded, LedgerEntry, VertexLedger, DEFAULT_ENUM_BUDGET};

use address::check_indices;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("T is singular")]
    NonSingularity,
    #[error("T is not a contraction (spectral radius {rho})")]
    NotContracting { rho: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not supported (1..=3)")]
    UnsupportedDimension(usize),
    #[error("the digit set is empty")]
    NoDigits,
    #[error("invalid tolerance: {0}")]
    Tolerance(String),
}

impl From<SpectrumViolation> for ModelError {
    fn from(v: SpectrumViolation) -> Self {
        match v {
            SpectrumViolation::NonSingularityFailed => ModelError::NonSingularity,
            SpectrumViolation::NotContractingFailed { rho } => ModelError::NotContracting { rho },
        }
    }
}

/// A validated model with `d_1 = 0`.
#[derive(Debug, Clone)]
pub struct IfsModel<S> {
    t: Matrix<S>,
    digits: Vec<Vector<S>>,
    first_digit: Vector<S>,
    shift: Vector<S>,
    tol: ToleranceConfig,
    spectral_radius: f64,
    warnings: Vec<String>,
}

/// Check the hypotheses, drop duplicate digits and translate so that the
/// first digit is zero.
///
/// With `s = (I - T)^-1 T d_1` the original attractor is the normalized
/// one shifted by `s`.
pub fn validate_model<S: Scalar>(
    t: Matrix<S>,
    digits: Vec<Vector<S>>,
    tol: ToleranceConfig,
) -> Result<IfsModel<S>, ModelError> {
    tol.validate().map_err(|e| ModelError::Tolerance(e.to_string()))?;
    let n = t.dim();
    if !(1..=3).contains(&n) {
        return Err(ModelError::UnsupportedDimension(n));
    }
    if digits.is_empty() {
        return Err(ModelError::NoDigits);
    }
    if let Some(bad) = digits.iter().find(|d| d.dim() != n) {
        return Err(ModelError::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let spectrum = validate_spectrum(&t, tol.eps_geom)?;
    let mut warnings = spectrum.warnings;

    let mut unique: Vec<Vector<S>> = Vec::with_capacity(digits.len());
    for d in digits {
        if unique.contains(&d) {
            warnings.push(format!("duplicate digit {d} removed"));
        } else {
            unique.push(d);
        }
    }

    let d1 = unique[0].clone();
    let shift = if d1.is_zero_within(0.0) {
        Vector::zeros(n)
    } else {
        let td1 = t.apply(&d1).expect("dimensions checked");
        let i_minus_t = Matrix::identity(n).sub(&t).expect("square");
        i_minus_t
            .solve(&td1, tol.eps_geom)
            .map_err(|_| ModelError::NotContracting {
                rho: spectrum.spectral_radius,
            })?
    };
    let digits = unique.iter().map(|d| d.sub(&d1)).collect();
    Ok(IfsModel {
        t,
        digits,
        first_digit: d1,
        shift,
        tol,
        spectral_radius: spectrum.spectral_radius,
        warnings,
    })
}

impl<S: Scalar> IfsModel<S> {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.t
    }

    /// Normalized digits, `digits()[0] = 0`.
    pub fn digits(&self) -> &[Vector<S>] {
        &self.digits
    }

    pub fn q(&self) -> usize {
        self.digits.len()
    }

    /// Digits as given (duplicates removed).
    pub fn original_digits(&self) -> Vec<Vector<S>> {
        self.digits.iter().map(|d| d.add(&self.first_digit)).collect()
    }

    /// Translation from normalized to original coordinates.
    pub fn normalization_shift(&self) -> &Vector<S> {
        &self.shift
    }

    pub fn to_original(&self, x: &Vector<S>) -> Vector<S> {
        x.add(&self.shift)
    }

    pub fn from_original(&self, x: &Vector<S>) -> Vector<S> {
        x.sub(&self.shift)
    }

    pub fn tolerance(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `phi_j(x) = T(x + d_j)` with 1-based `j`.
    pub fn apply_map(&self, j: usize, x: &Vector<S>) -> Vector<S> {
        self.t
            .apply(&x.add(&self.digits[j - 1]))
            .expect("dimensions checked")
    }

    /// `phi_{j_1} o ... o phi_{j_k}` applied to `x`.
    fn fold_word(&self, word: &[usize], x: Vector<S>) -> Vector<S> {
        word.iter().rev().fold(x, |acc, &j| self.apply_map(j, &acc))
    }

    /// `sum_{s=1..k} T^s d_{j_s}`.
    pub fn evaluate_finite_address(&self, addr: &FiniteAddress) -> Result<Vector<S>, AddressError> {
        check_indices(addr.indices(), self.q())?;
        Ok(self.fold_word(addr.indices(), Vector::zeros(self.dim())))
    }

    /// Closed form of an eventually periodic address: the periodic part is
    /// the fixed point `y = (I - T^p)^-1 sum_{t=1..p} T^t d_{j_t}`, then
    /// the prefix maps are applied.
    pub fn evaluate_ep_address(&self, ep: &EpAddress) -> Result<Vector<S>, AddressError> {
        check_indices(ep.prefix(), self.q())?;
        check_indices(ep.period(), self.q())?;
        let n = self.dim();
        let partial = self.fold_word(ep.period(), Vector::zeros(n));
        let tp = self.t.pow(ep.period().len() as u64);
        let y = Matrix::identity(n)
            .sub(&tp)
            .expect("square")
            .solve(&partial, self.tol.eps_geom)
            .expect("I - T^p is invertible for a contraction");
        Ok(self.fold_word(ep.prefix(), y))
    }

    /// The same model over `f64`.
    pub fn to_f64(&self) -> IfsModel<f64> {
        IfsModel {
            t: self.t.to_f64(),
            digits: self.digits.iter().map(|d| d.map(Scalar::to_f64)).collect(),
            first_digit: self.first_digit.map(Scalar::to_f64),
            shift: self.shift.map(Scalar::to_f64),
            tol: self.tol,
            spectral_radius: self.spectral_radius,
            warnings: self.warnings.clone(),
        }
    }
}
