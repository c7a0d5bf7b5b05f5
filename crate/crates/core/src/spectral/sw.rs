use serde::{Deserialize, Serialize};

use crate::hull::convex_hull;
use crate::numeric::{Matrix, Scalar, Vector};

/// Highest power of `T^T` ever tried, whatever `k_cap` says. Rational
/// entries grow linearly with the power, so unbounded caps are clipped.
pub const SW_POWER_LIMIT: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwVerdict {
    Polytope,
    NotPolytope,
    /// `conv(D)` is not full-dimensional.
    Inapplicable,
}

/// One outward facet normal of `conv(D)` and the first power `k` with
/// `(T^T)^k normal` parallel to `normal`, if found.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalCheck<S> {
    pub normal: Vector<S>,
    pub k_found: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwOutcome<S> {
    pub verdict: SwVerdict,
    pub normals: Vec<NormalCheck<S>>,
    /// Largest power examined: `min(k_cap, SW_POWER_LIMIT)`.
    pub powers_tested: u64,
}

fn parallel<S: Scalar>(w: &Vector<S>, v: &Vector<S>, eps: f64) -> bool {
    let tol = eps * w.norm_f64() * v.norm_f64();
    match v.dim() {
        1 => true,
        2 => (w[0].clone() * &v[1] - w[1].clone() * &v[0]).is_zero_within(tol),
        _ => w.cross(v).coords().iter().all(|c| c.is_zero_within(tol)),
    }
}

/// Facet-normal criterion: `conv(F)` is a polytope when every outward
/// normal of `conv(D)` is an eigenvector of some power of `T^T`.
///
/// The parallelism test is exact in rational mode and uses relative
/// tolerance `eps` (on the cross product) in float mode.
pub fn sw_criterion<S: Scalar>(
    t: &Matrix<S>,
    digits: &[Vector<S>],
    k_cap: u64,
    eps: f64,
) -> SwOutcome<S> {
    let powers_tested = k_cap.min(SW_POWER_LIMIT);
    let facets = convex_hull(digits, eps)
        .ok()
        .and_then(|hull| hull.facet_normals().ok());
    let Some(facets) = facets else {
        return SwOutcome {
            verdict: SwVerdict::Inapplicable,
            normals: Vec::new(),
            powers_tested,
        };
    };
    let tt = t.transpose();
    let normals: Vec<NormalCheck<S>> = facets
        .into_iter()
        .map(|f| {
            let mut w = f.normal.clone();
            let k_found = (1..=powers_tested).find(|_| {
                w = tt.apply(&w).expect("dimensions agree");
                parallel(&w, &f.normal, eps)
            });
            NormalCheck {
                normal: f.normal,
                k_found,
            }
        })
        .collect();
    let verdict = if normals.iter().all(|c| c.k_found.is_some()) {
        SwVerdict::Polytope
    } else {
        SwVerdict::NotPolytope
    };
    SwOutcome {
        verdict,
        normals,
        powers_tested,
    }
}
