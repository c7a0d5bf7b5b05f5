use thiserror::Error;

use crate::numeric::{operator_norm, Scalar};

use super::IfsModel;

/// Powers of `T` searched for a norm below one.
const MAX_POWER: u32 = 64;

/// Relative outward rounding applied to float bounds.
const ROUND_UP: f64 = 1.0 + 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("no power T^s with s <= {MAX_POWER} has operator norm below 1")]
pub struct RadiusError;

/// `R` with `|x| <= R` for every `x` in the (normalized) attractor.
///
/// With `s` the smallest power such that `|T^s| < 1`,
/// `R = (sum_{u=1..s} |T^u|) max_j |d_j| / (1 - |T^s|)`, using the
/// Euclidean operator norm.
pub fn attractor_radius_bound<S: Scalar>(model: &IfsModel<S>) -> Result<f64, RadiusError> {
    let t = model.matrix().to_f64();
    let max_digit = model
        .digits()
        .iter()
        .map(|d| d.norm_f64())
        .fold(0.0, f64::max);
    let mut power = t.clone();
    let mut partial = 0.0;
    for _ in 1..=MAX_POWER {
        let norm = operator_norm(&power);
        partial += norm;
        if norm < 1.0 {
            return Ok(partial * max_digit / (1.0 - norm) * ROUND_UP);
        }
        power = power.mul(&t).expect("square");
    }
    Err(RadiusError)
}

/// Hausdorff distance bound between `A_k` and the attractor:
/// `|T^k| * R`.
pub fn tail_error_bound<S: Scalar>(model: &IfsModel<S>, k: u32) -> Result<f64, RadiusError> {
    let r = attractor_radius_bound(model)?;
    let norm = operator_norm(&model.matrix().to_f64().pow(k as u64));
    Ok(norm * r * ROUND_UP)
}
