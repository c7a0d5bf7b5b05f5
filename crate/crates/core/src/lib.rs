//! Decide whether the convex hull of a self-affine fractal is a polytope.
//!
//! The fractal `F` is the attractor of `phi_j(x) = T(x + d_j)` for one
//! contracting matrix `T` in dimension 1 to 3 and a finite digit set. The
//! vertex counts of `conv(A_k)` are tracked up to a bound `k` derived from
//! the eigenvalues of `T^-1`; a stabilized count is turned into exact
//! vertices with eventually periodic addresses and a checkable certificate.
//!
//! All algorithms are generic over [`numeric::Scalar`], implemented for
//! [`BigRational`] (exact) and `f64`.
//!
//! ```
//! use fractal_hull::{analyze, validate_model, DecideOptions, Matrix, RationalModel, Vector};
//! use fractal_hull::{BigRational, Scalar, ToleranceConfig};
//!
//! let t = Matrix::identity(2).scale(&BigRational::from_ratio(1, 2));
//! let digits = vec![Vector::from_ints(&[0, 0]), Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
//! let model: RationalModel = validate_model(t, digits, ToleranceConfig::default()).unwrap();
//! let report = analyze(&model, &DecideOptions::default());
//! assert_eq!(report.decision.verdict_id(), "POLYTOPE");
//! ```

pub mod cli;
pub mod decide;
pub mod hull;
pub mod ifs;
pub mod numeric;
pub mod spectral;

pub use num_rational::BigRational;

pub use decide::{analyze, decide_theorem1, DecideOptions, Decision, Report};
pub use ifs::{validate_model, EpAddress, FiniteAddress, IfsModel};
pub use numeric::{Matrix, Scalar, ToleranceConfig, Vector};

pub type RationalModel = IfsModel<BigRational>;
pub type FloatModel = IfsModel<f64>;
pub type RationalReport = Report<BigRational>;
pub type FloatReport = Report<f64>;
pub type RationalDecision = Decision<BigRational>;
pub type FloatDecision = Decision<f64>;
