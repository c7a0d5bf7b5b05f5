//! Scalars in two arithmetic modes and the small dense linear algebra the
//! analysis needs (n <= 3).

mod eigen;
mod linalg;
mod scalar;
mod tolerance;

pub use eigen::{eigen_residual, eigenvalues, operator_norm, spectral_radius};
pub use linalg::{LinalgError, Matrix, Vector};
pub use scalar::{parse_rational, ArithmeticMode, Scalar};
pub use tolerance::{ToleranceConfig, ToleranceError};

pub use num_complex::Complex64;
