use std::collections::BTreeSet;

use crate::hull::{convex_hull_with_sources, Polytope};
use crate::ifs::{tail_error_bound, EpAddress, IfsModel};
use crate::numeric::{Scalar, Vector};

/// One line of a certification transcript. Indices refer to the candidate
/// list; digits are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum CertCheck<S> {
    /// (a) the candidate equals the closed-form value of its address.
    Evaluation {
        candidate: usize,
        evaluated: Vector<S>,
        passed: bool,
    },
    /// (b) the candidate is a vertex of the candidate hull, not a duplicate.
    Extremality { candidate: usize, passed: bool },
    /// (c) `T(v + d_j)` lies in the candidate hull.
    Containment {
        candidate: usize,
        digit: usize,
        image: Vector<S>,
        passed: bool,
    },
}

impl<S> CertCheck<S> {
    pub fn passed(&self) -> bool {
        match self {
            CertCheck::Evaluation { passed, .. }
            | CertCheck::Extremality { passed, .. }
            | CertCheck::Containment { passed, .. } => *passed,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertCheck::Evaluation { .. } => "evaluation",
            CertCheck::Extremality { .. } => "extremality",
            CertCheck::Containment { .. } => "containment",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertResult<S> {
    /// Every check passed exactly (rational mode only).
    pub certified: bool,
    /// Every check passed, within `tolerance` in float mode.
    pub consistent: bool,
    /// Absolute tolerance used (0 in rational mode).
    pub tolerance: f64,
    pub hull: Option<Polytope<S>>,
    pub transcript: Vec<CertCheck<S>>,
}

impl<S> CertResult<S> {
    /// Labels of the failed checks, deduplicated, in check order.
    pub fn failed_checks(&self) -> Vec<&'static str> {
        let mut seen = Vec::new();
        for c in self.transcript.iter().filter(|c| !c.passed()) {
            if !seen.contains(&c.label()) {
                seen.push(c.label());
            }
        }
        seen
    }
}

/// Prove `conv(F) = P*` for `P* = conv(candidates)`.
///
/// (a) puts every candidate in `F`; (c) shows every map sends `P*` into
/// itself, so `F` is inside `P*`; (b) makes the candidates exactly the
/// vertices. All checks always run. `depth` is the address depth the
/// candidates came from; in float mode it widens the tolerance to the
/// truncation bound at that depth.
pub fn certify_polytope<S: Scalar>(
    model: &IfsModel<S>,
    candidates: &[(EpAddress, Vector<S>)],
    depth: Option<u32>,
) -> CertResult<S> {
    let eps = model.tolerance().eps_geom;
    let scale = candidates
        .iter()
        .map(|(_, v)| v.max_abs_f64())
        .fold(1.0, f64::max);
    let tolerance = if S::is_exact() {
        0.0
    } else {
        let tail = depth
            .and_then(|n| tail_error_bound(model, n).ok())
            .unwrap_or(0.0);
        (eps * scale).max(tail)
    };

    let mut transcript = Vec::new();
    for (i, (addr, point)) in candidates.iter().enumerate() {
        let (evaluated, passed) = match model.evaluate_ep_address(addr) {
            Ok(v) => {
                let ok = if v.dim() != point.dim() {
                    false
                } else if S::is_exact() {
                    &v == point
                } else {
                    v.sub(point).norm_f64() <= tolerance
                };
                (v, ok)
            }
            Err(_) => (Vector::zeros(model.dim()), false),
        };
        transcript.push(CertCheck::Evaluation {
            candidate: i,
            evaluated,
            passed,
        });
    }

    let points: Vec<Vector<S>> = candidates.iter().map(|(_, v)| v.clone()).collect();
    let hull = match convex_hull_with_sources(&points, eps) {
        Ok((hull, sources)) => {
            let vertex_sources: BTreeSet<usize> = sources.iter().copied().collect();
            for i in 0..candidates.len() {
                transcript.push(CertCheck::Extremality {
                    candidate: i,
                    passed: vertex_sources.contains(&i),
                });
            }
            for (&src, v) in sources.iter().zip(hull.vertices()) {
                for j in 1..=model.q() {
                    let image = model.apply_map(j, v);
                    let passed = hull.contains_with_slack(&image, tolerance);
                    transcript.push(CertCheck::Containment {
                        candidate: src,
                        digit: j,
                        image,
                        passed,
                    });
                }
            }
            Some(hull)
        }
        Err(_) => {
            for i in 0..candidates.len() {
                transcript.push(CertCheck::Extremality {
                    candidate: i,
                    passed: false,
                });
            }
            None
        }
    };

    let consistent = hull.is_some() && transcript.iter().all(CertCheck::passed);
    CertResult {
        certified: consistent && S::is_exact(),
        consistent,
        tolerance,
        hull,
        transcript,
    }
}
