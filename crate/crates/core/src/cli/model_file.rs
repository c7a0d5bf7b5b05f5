use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::ifs::{validate_model, IfsModel, ModelError, DEFAULT_ENUM_BUDGET};
use crate::numeric::{parse_rational, ArithmeticMode, Matrix, Scalar, ToleranceConfig, Vector};
use crate::spectral::BoundMode;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
}

/// Optional knobs in a model file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelOptions {
    pub denom_max: Option<u32>,
    pub angle_tol: Option<f64>,
    pub eps_geom: Option<f64>,
    pub bound_mode: Option<BoundMode>,
    pub enum_budget: Option<u64>,
    pub seed: Option<u64>,
}

/// The JSON model document. Entries are integers, `"p/q"` strings, or (in
/// float mode) decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dimension: usize,
    pub matrix: Vec<Vec<Value>>,
    pub digits: Vec<Vec<Value>>,
    #[serde(default = "default_arithmetic")]
    pub arithmetic: ArithmeticMode,
    #[serde(default)]
    pub options: ModelOptions,
}

fn default_arithmetic() -> ArithmeticMode {
    ArithmeticMode::Rational
}

/// Settings that are not part of the model itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub bound_mode: BoundMode,
    pub enum_budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum AnyModel {
    Rational(IfsModel<BigRational>),
    Float(IfsModel<f64>),
}

#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: AnyModel,
    pub settings: RunSettings,
}

pub(crate) fn rational_entry(v: &Value) -> Result<BigRational, String> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) if !s.contains(['.', 'e', 'E']) => s.clone(),
        Value::String(s) => {
            return Err(format!(
                "decimal \"{s}\" is not allowed in rational mode; write it as \"p/q\""
            ))
        }
        Value::Number(n) => {
            return Err(format!("number {n} is not allowed in rational mode; write it as \"p/q\""))
        }
        other => return Err(format!("expected a number, got {other}")),
    };
    parse_rational(&text).ok_or_else(|| format!("cannot parse \"{text}\" as a rational"))
}

pub(crate) fn float_entry(v: &Value) -> Result<f64, String> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("cannot read {n}")),
        Value::String(s) => match parse_rational(s) {
            Some(r) => Ok(Scalar::to_f64(&r)),
            None => s.trim().parse::<f64>().map_err(|_| format!("cannot parse \"{s}\" as a number")),
        },
        other => Err(format!("expected a number, got {other}")),
    }
    .and_then(|x| {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(format!("entry {v} is not finite"))
        }
    })
}

fn build<S: Scalar>(
    file: &ModelFile,
    tol: ToleranceConfig,
    entry: impl Fn(&Value) -> Result<S, String>,
) -> Result<IfsModel<S>, InputError> {
    let n = file.dimension;
    if !(1..=3).contains(&n) {
        return Err(ModelError::UnsupportedDimension(n).into());
    }
    let convert = |row: &Vec<Value>, what: &str| -> Result<Vec<S>, InputError> {
        if row.len() != n {
            return Err(ModelError::DimensionMismatch {
                expected: n,
                found: row.len(),
            }
            .into());
        }
        row.iter()
            .map(|v| entry(v).map_err(|e| InputError::Schema(format!("{what}: {e}"))))
            .collect()
    };
    if file.matrix.len() != n {
        return Err(ModelError::DimensionMismatch {
            expected: n,
            found: file.matrix.len(),
        }
        .into());
    }
    let rows = file
        .matrix
        .iter()
        .map(|r| convert(r, "matrix"))
        .collect::<Result<Vec<_>, _>>()?;
    let t = Matrix::from_rows(rows).map_err(|e| InputError::Schema(e.to_string()))?;
    let digits = file
        .digits
        .iter()
        .map(|d| convert(d, "digit").map(Vector::new))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(validate_model(t, digits, tol)?)
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(&self) -> Result<LoadedModel, InputError> {
        let defaults = ToleranceConfig::default();
        let o = &self.options;
        let tol = ToleranceConfig {
            eps_geom: o.eps_geom.unwrap_or(defaults.eps_geom),
            angle_tol: o.angle_tol.unwrap_or(defaults.angle_tol),
            denom_max: o.denom_max.unwrap_or(defaults.denom_max),
            ..defaults
        };
        let model = match self.arithmetic {
            ArithmeticMode::Rational => AnyModel::Rational(build(self, tol, rational_entry)?),
            ArithmeticMode::Float => AnyModel::Float(build(self, tol, float_entry)?),
        };
        Ok(LoadedModel {
            model,
            settings: RunSettings {
                bound_mode: o.bound_mode.unwrap_or_default(),
                enum_budget: o.enum_budget.unwrap_or(DEFAULT_ENUM_BUDGET),
                seed: o.seed.unwrap_or(0),
            },
        })
    }
}

/// One scalar entry in the arithmetic of `S`.
pub(crate) fn scalar_entry<S: Scalar>(v: &Value) -> Result<S, String> {
    if S::is_exact() {
        rational_entry(v).map(|r| S::from_rational(&r))
    } else {
        let x = float_entry(v)?;
        BigRational::from_float(x)
            .map(|r| S::from_rational(&r))
            .ok_or_else(|| format!("entry {v} is not finite"))
    }
}

/// Read, parse and validate a model file.
pub fn parse_model(path: &Path) -> Result<LoadedModel, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ModelFile::from_json(&text)?.load()
}
