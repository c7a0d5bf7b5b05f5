use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::EigClass;

/// How the denominators of the rational-angle eigenvalues combine into the
/// step bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// `k = 2 * n_1 * n_2 * ... * n_m`
    #[default]
    Product,
    /// `k = 2 * lcm(n_1, ..., n_m)`
    Lcm,
}

/// The rational-angle eigenvalues `U` and the derived step bound `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundK {
    pub members: Vec<EigClass>,
    pub k: u64,
    pub mode: BoundMode,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundOutcome {
    Bound(BoundK),
    /// No eigenvalue of `T^-1` has a rational angle.
    EmptyU,
}

/// Step bound from the classified distinct eigenvalues of `T^-1`.
/// Saturates at `u64::MAX` on overflow.
pub fn compute_bound_k(classes: &[EigClass], mode: BoundMode) -> BoundOutcome {
    let members: Vec<EigClass> = classes
        .iter()
        .filter(|c| c.rational_angle.is_some())
        .cloned()
        .collect();
    if members.is_empty() {
        return BoundOutcome::EmptyU;
    }
    let mut denominators = members
        .iter()
        .map(|c| c.rational_angle.expect("member of U").n as u64);
    let combined = match mode {
        BoundMode::Product => denominators.try_fold(1u64, |acc, n| acc.checked_mul(n)),
        BoundMode::Lcm => Some(denominators.fold(1u64, |acc, n| acc.lcm(&n))),
    };
    let k = combined.and_then(|c| c.checked_mul(2)).unwrap_or(u64::MAX);
    BoundOutcome::Bound(BoundK { members, k, mode })
}
