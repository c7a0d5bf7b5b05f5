//! The bounded decision procedure: step bound, stabilization search,
//! address extraction, certification and the facet-normal cross-check.

mod certify;
mod extract;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::hull::hausdorff;
use crate::ifs::{step_hull, EpAddress, IfsModel, VertexLedger};
use crate::numeric::{ArithmeticMode, Scalar, Vector};
use crate::spectral::{
    compute_bound_k, inverse_spectrum, sw_criterion, BoundMode, BoundOutcome, EigClass, SwOutcome, SwVerdict,
};

pub use certify::{certify_polytope, CertCheck, CertResult};
pub use extract::{detect_stabilization, extract_ep_address, extract_ep_addresses, ExtractionFailure};

/// Stated in every report: the stabilization rule as implemented.
pub const RULE_NOTE: &str = "decision rule: conv(F) is a polytope iff #V_i = #V_(i+1) for some i <= k; \
     the bound theorem's closing '#V_i != #V_(i+1)' is read as a sign typo";
/// Stated in every report: what `V_k` means here.
pub const VERTEX_SET_NOTE: &str = "V_k is taken to be the vertex set of conv(A_k)";
pub const FLOAT_NOTE: &str =
    "float arithmetic: eigenvalue angles and geometric predicates are tolerance-based; results are not certified";

/// Cap on the period budget used to size the extraction depth.
const MAX_PERIOD_BUDGET: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOptions {
    pub bound_mode: BoundMode,
    /// Repetitions of a period required when reading e.p. addresses.
    pub min_reps: usize,
    /// Extraction retries, each doubling the address depth.
    pub extraction_retries: u32,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            bound_mode: BoundMode::Product,
            min_reps: 3,
            extraction_retries: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "snake_case")]
pub enum NotPolytopeReason {
    EmptyU,
    NoStabilizationWithinBound(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decision<S> {
    /// Vertices in normalized coordinates (`d_1 = 0`).
    Polytope {
        vertices: Vec<(EpAddress, Vector<S>)>,
        stabilization_index: usize,
        certified: bool,
    },
    NotPolytope(NotPolytopeReason),
    Inconclusive { reason: String },
}

impl<S> Decision<S> {
    /// Stable identifier for scripting.
    pub fn verdict_id(&self) -> &'static str {
        match self {
            Decision::Polytope { .. } => "POLYTOPE",
            Decision::NotPolytope(NotPolytopeReason::EmptyU) => "NOT_POLYTOPE_EMPTY_U",
            Decision::NotPolytope(NotPolytopeReason::NoStabilizationWithinBound(_)) => {
                "NOT_POLYTOPE_NO_STABILIZATION"
            }
            Decision::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }

    /// `Some(true)` for a polytope, `Some(false)` for not a polytope.
    pub fn is_polytope(&self) -> Option<bool> {
        match self {
            Decision::Polytope { .. } => Some(true),
            Decision::NotPolytope(_) => Some(false),
            Decision::Inconclusive { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountEntry {
    pub i: usize,
    pub count: usize,
    /// Hausdorff distance between `conv(A_{i-1})` and `conv(A_i)`.
    pub hausdorff_delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    SwInapplicable,
    /// The bound procedure itself was inconclusive.
    NoTheoremVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck<S> {
    pub k_cap: u64,
    pub sw: SwOutcome<S>,
    pub agreement: Agreement,
}

#[derive(Debug, Clone)]
pub struct Report<S> {
    pub mode: ArithmeticMode,
    pub classes: Vec<EigClass>,
    pub bound: BoundOutcome,
    pub bound_mode: BoundMode,
    pub counts: Vec<CountEntry>,
    pub decision: Decision<S>,
    /// The last certificate attempted, if any.
    pub certification: Option<CertResult<S>>,
    /// Address depth of the certified candidates.
    pub extraction_depth: Option<usize>,
    pub cross_check: Option<CrossCheck<S>>,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

impl<S: Scalar> Report<S> {
    pub fn bound_k(&self) -> Option<u64> {
        match &self.bound {
            BoundOutcome::Bound(b) => Some(b.k),
            BoundOutcome::EmptyU => None,
        }
    }
}

/// Run the bounded procedure: classify the eigenvalues of `T^-1`, stop at
/// `U` empty, otherwise iterate the vertex recursion up to `k + 1` steps and
/// certify at the first count stabilization.
///
/// A stabilization whose certificate fails does not end the search; if no
/// later one certifies, the verdict is inconclusive.
pub fn decide_theorem1<S: Scalar>(model: &IfsModel<S>, opts: &DecideOptions) -> Report<S> {
    let start = Instant::now();
    let tol = model.tolerance();
    let classes = inverse_spectrum(model.matrix(), tol);
    let bound = compute_bound_k(&classes, opts.bound_mode);
    let mut warnings: Vec<String> = model.warnings().to_vec();
    warnings.push(RULE_NOTE.into());
    warnings.push(VERTEX_SET_NOTE.into());
    if !S::is_exact() {
        warnings.push(FLOAT_NOTE.into());
    }
    let mut report = Report {
        mode: S::MODE,
        classes,
        bound: bound.clone(),
        bound_mode: opts.bound_mode,
        counts: Vec::new(),
        decision: Decision::NotPolytope(NotPolytopeReason::EmptyU),
        certification: None,
        extraction_depth: None,
        cross_check: None,
        warnings,
        elapsed: Duration::ZERO,
    };

    let k = match &bound {
        BoundOutcome::EmptyU => {
            report.warnings.push(format!(
                "U is empty for denominators up to {}; this is possible only if the ambient dimension \
                 is even (here {})",
                tol.denom_max,
                model.dim()
            ));
            report.elapsed = start.elapsed();
            return report;
        }
        BoundOutcome::Bound(b) => b.k,
    };
    let period_budget = match compute_bound_k(&report.classes, BoundMode::Lcm) {
        BoundOutcome::Bound(b) => b.k.min(MAX_PERIOD_BUDGET) as usize,
        BoundOutcome::EmptyU => 1,
    };

    let mut prev = VertexLedger::initial(model);
    let mut current = step_hull(model, &prev);
    report.counts.push(count_entry(&prev, &current));
    let mut stabilized_without_certificate = Vec::new();
    let mut i: u64 = 1;
    while i <= k {
        prev = current;
        current = step_hull(model, &prev);
        report.counts.push(count_entry(&prev, &current));
        if prev.len() == current.len() {
            let idx = i as usize;
            match certify_at(model, &current, idx, period_budget, opts) {
                Attempt::Certified { vertices, depth, cert } => {
                    report.decision = Decision::Polytope {
                        vertices,
                        stabilization_index: idx,
                        certified: cert.certified,
                    };
                    report.extraction_depth = Some(depth);
                    report.certification = Some(cert);
                    report.elapsed = start.elapsed();
                    return report;
                }
                Attempt::Failed { note, cert } => {
                    report.warnings.push(format!("counts stabilized at i={idx} but {note}"));
                    if cert.is_some() {
                        report.certification = cert;
                    }
                    stabilized_without_certificate.push(idx);
                }
            }
        }
        i += 1;
    }
    report.decision = if stabilized_without_certificate.is_empty() {
        Decision::NotPolytope(NotPolytopeReason::NoStabilizationWithinBound(k))
    } else {
        Decision::Inconclusive {
            reason: format!(
                "vertex counts stabilized at i in {stabilized_without_certificate:?} but no certificate \
                 was obtained"
            ),
        }
    };
    report.elapsed = start.elapsed();
    report
}

fn count_entry<S: Scalar>(prev: &VertexLedger<S>, next: &VertexLedger<S>) -> CountEntry {
    CountEntry {
        i: next.step(),
        count: next.len(),
        hausdorff_delta: hausdorff(prev.hull(), next.hull()),
    }
}

enum Attempt<S> {
    Certified {
        vertices: Vec<(EpAddress, Vector<S>)>,
        depth: usize,
        cert: CertResult<S>,
    },
    Failed {
        note: String,
        cert: Option<CertResult<S>>,
    },
}

/// Extraction and certification at stabilization index `i`, with
/// `ledger` at step `i + 1`. Depth starts at `i + max(2P, 8)` and doubles
/// on each retry.
fn certify_at<S: Scalar>(
    model: &IfsModel<S>,
    ledger: &VertexLedger<S>,
    i: usize,
    period_budget: usize,
    opts: &DecideOptions,
) -> Attempt<S> {
    let mut deep = ledger.clone();
    let mut depth = i + (2 * period_budget).max(8);
    let mut last_cert = None;
    let mut notes = Vec::new();
    for _ in 0..=opts.extraction_retries {
        while deep.step() < depth {
            deep = step_hull(model, &deep);
        }
        match extract_ep_addresses(&deep, opts.min_reps) {
            Err(e) => notes.push(format!("depth {depth}: {e}")),
            Ok(addresses) => {
                let candidates: Vec<(EpAddress, Vector<S>)> = addresses
                    .into_iter()
                    .map(|a| {
                        let v = model.evaluate_ep_address(&a).expect("ledger indices are valid");
                        (a, v)
                    })
                    .collect();
                let cert = certify_polytope(model, &candidates, Some(depth as u32));
                if cert.consistent {
                    let vertices = hull_order(&cert, candidates);
                    return Attempt::Certified { vertices, depth, cert };
                }
                notes.push(format!("depth {depth}: {} check failed", cert.failed_checks().join("/")));
                last_cert = Some(cert);
            }
        }
        depth *= 2;
    }
    Attempt::Failed {
        note: format!("certification failed ({})", notes.join("; ")),
        cert: last_cert,
    }
}

/// Candidates reordered to follow the hull's vertex order.
fn hull_order<S: Scalar>(cert: &CertResult<S>, candidates: Vec<(EpAddress, Vector<S>)>) -> Vec<(EpAddress, Vector<S>)> {
    let Some(hull) = &cert.hull else {
        return candidates;
    };
    hull.vertices()
        .iter()
        .filter_map(|v| candidates.iter().find(|(_, p)| p == v).cloned())
        .collect()
}

/// Compare the bound procedure's verdict with the facet-normal criterion.
pub fn cross_check<S: Scalar>(model: &IfsModel<S>, decision: &Decision<S>, k_cap: u64) -> CrossCheck<S> {
    let sw = sw_criterion(model.matrix(), model.digits(), k_cap, model.tolerance().eps_geom);
    let agreement = match (sw.verdict, decision.is_polytope()) {
        (SwVerdict::Inapplicable, _) => Agreement::SwInapplicable,
        (_, None) => Agreement::NoTheoremVerdict,
        (v, Some(p)) if (v == SwVerdict::Polytope) == p => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    CrossCheck { k_cap, sw, agreement }
}

/// Default power cap for the cross-check: the bound `k`, or 64 when `U` is
/// empty.
pub fn default_k_cap(bound: &BoundOutcome) -> u64 {
    match bound {
        BoundOutcome::Bound(b) => b.k,
        BoundOutcome::EmptyU => 64,
    }
}

/// [`decide_theorem1`] followed by [`cross_check`]. A disagreement turns the
/// decision into `Inconclusive`, naming both verdicts.
pub fn analyze<S: Scalar>(model: &IfsModel<S>, opts: &DecideOptions) -> Report<S> {
    let mut report = decide_theorem1(model, opts);
    let start = Instant::now();
    let check = cross_check(model, &report.decision, default_k_cap(&report.bound));
    if check.agreement == Agreement::Disagree {
        report.decision = Decision::Inconclusive {
            reason: format!(
                "criteria disagree: bound procedure says {}, facet-normal criterion says {:?}",
                report.decision.verdict_id(),
                check.sw.verdict
            ),
        };
    }
    report.cross_check = Some(check);
    report.elapsed += start.elapsed();
    report
}
