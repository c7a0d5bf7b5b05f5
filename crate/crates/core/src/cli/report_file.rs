use serde::{Deserialize, Serialize};

use crate::decide::{Agreement, CertCheck, CountEntry, Decision, NotPolytopeReason, Report};
use crate::ifs::IfsModel;
use crate::numeric::{ArithmeticMode, Scalar, Vector};
use crate::spectral::{BoundMode, BoundOutcome, EigClass, SwVerdict};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum DecisionFile {
    #[serde(rename = "POLYTOPE")]
    Polytope {
        stabilization_index: usize,
        certified: bool,
        vertex_count: usize,
    },
    #[serde(rename = "NOT_POLYTOPE_EMPTY_U")]
    NotPolytopeEmptyU { denom_max: u32 },
    #[serde(rename = "NOT_POLYTOPE_NO_STABILIZATION")]
    NotPolytopeNoStabilization { k: u64 },
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive { reason: String },
}

/// An eigenvalue of `T^-1`; `p`, `n` present when its argument is `pi p / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenFile {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub angle: f64,
    pub p: Option<i64>,
    pub n: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundFile {
    #[serde(rename = "U")]
    pub u: Vec<EigenFile>,
    pub k: Option<u64>,
    pub mode: BoundMode,
}

/// A vertex in original coordinates with its e.p. address.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexFile {
    pub point: Vec<String>,
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckFile {
    pub check: String,
    pub candidate: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digit: Option<usize>,
    /// Evaluated point (evaluation) or image point (containment), in
    /// original coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationFile {
    pub certified: bool,
    pub consistent: bool,
    pub tolerance: f64,
    pub depth: Option<usize>,
    pub failed_checks: Vec<String>,
    pub transcript: Vec<CheckFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFile {
    pub normal: Vec<String>,
    pub k_found: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwFile {
    pub verdict: SwVerdict,
    pub agreement: Agreement,
    pub k_cap: u64,
    pub powers_tested: u64,
    pub normals: Vec<NormalFile>,
}

/// Machine-readable analysis report. Contains nothing run-dependent, so the
/// same model file always gives the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: String,
    pub arithmetic: ArithmeticMode,
    pub decision: DecisionFile,
    pub eigenvalues: Vec<EigenFile>,
    pub bound: BoundFile,
    pub counts: Vec<CountEntry>,
    pub vertices: Vec<VertexFile>,
    pub normalization_shift: Vec<String>,
    pub certification: Option<CertificationFile>,
    pub sw_check: Option<SwFile>,
    pub warnings: Vec<String>,
}

pub(crate) fn texts<S: Scalar>(v: &Vector<S>) -> Vec<String> {
    v.coords().iter().map(Scalar::to_text).collect()
}

fn eigen_file(c: &EigClass) -> EigenFile {
    EigenFile {
        re: c.lambda.re,
        im: c.lambda.im,
        modulus: c.modulus,
        angle: c.angle,
        p: c.rational_angle.map(|r| r.p),
        n: c.rational_angle.map(|r| r.n),
    }
}

impl ReportFile {
    pub fn from_report<S: Scalar>(model: &IfsModel<S>, report: &Report<S>) -> Self {
        let original = |v: &Vector<S>| texts(&model.to_original(v));
        let decision = match &report.decision {
            Decision::Polytope {
                vertices,
                stabilization_index,
                certified,
            } => DecisionFile::Polytope {
                stabilization_index: *stabilization_index,
                certified: *certified,
                vertex_count: vertices.len(),
            },
            Decision::NotPolytope(NotPolytopeReason::EmptyU) => DecisionFile::NotPolytopeEmptyU {
                denom_max: model.tolerance().denom_max,
            },
            Decision::NotPolytope(NotPolytopeReason::NoStabilizationWithinBound(k)) => {
                DecisionFile::NotPolytopeNoStabilization { k: *k }
            }
            Decision::Inconclusive { reason } => DecisionFile::Inconclusive { reason: reason.clone() },
        };
        let (u, k) = match &report.bound {
            BoundOutcome::Bound(b) => (b.members.iter().map(eigen_file).collect(), Some(b.k)),
            BoundOutcome::EmptyU => (Vec::new(), None),
        };
        let vertices = match &report.decision {
            Decision::Polytope { vertices, .. } => vertices
                .iter()
                .map(|(a, v)| VertexFile {
                    point: original(v),
                    prefix: a.prefix().to_vec(),
                    period: a.period().to_vec(),
                })
                .collect(),
            _ => Vec::new(),
        };
        let certification = report.certification.as_ref().map(|c| CertificationFile {
            certified: c.certified,
            consistent: c.consistent,
            tolerance: c.tolerance,
            depth: report.extraction_depth,
            failed_checks: c.failed_checks().iter().map(|s| s.to_string()).collect(),
            transcript: c
                .transcript
                .iter()
                .map(|t| match t {
                    CertCheck::Evaluation {
                        candidate,
                        evaluated,
                        passed,
                    } => CheckFile {
                        check: t.label().into(),
                        candidate: *candidate,
                        digit: None,
                        point: Some(original(evaluated)),
                        passed: *passed,
                    },
                    CertCheck::Extremality { candidate, passed } => CheckFile {
                        check: t.label().into(),
                        candidate: *candidate,
                        digit: None,
                        point: None,
                        passed: *passed,
                    },
                    CertCheck::Containment {
                        candidate,
                        digit,
                        image,
                        passed,
                    } => CheckFile {
                        check: t.label().into(),
                        candidate: *candidate,
                        digit: Some(*digit),
                        point: Some(original(image)),
                        passed: *passed,
                    },
                })
                .collect(),
        });
        let sw_check = report.cross_check.as_ref().map(|c| SwFile {
            verdict: c.sw.verdict,
            agreement: c.agreement,
            k_cap: c.k_cap,
            powers_tested: c.sw.powers_tested,
            normals: c
                .sw
                .normals
                .iter()
                .map(|n| NormalFile {
                    normal: texts(&n.normal),
                    k_found: n.k_found,
                })
                .collect(),
        });
        ReportFile {
            version: REPORT_VERSION.into(),
            arithmetic: report.mode,
            decision,
            eigenvalues: report.classes.iter().map(eigen_file).collect(),
            bound: BoundFile {
                u,
                k,
                mode: report.bound_mode,
            },
            counts: report.counts.clone(),
            vertices,
            normalization_shift: texts(model.normalization_shift()),
            certification,
            sw_check,
            warnings: report.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
