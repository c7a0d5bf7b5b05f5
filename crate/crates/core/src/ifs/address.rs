use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("digit index {index} out of range 1..={q}")]
pub struct AddressError {
    pub index: usize,
    pub q: usize,
}

pub(crate) fn check_indices(indices: &[usize], q: usize) -> Result<(), AddressError> {
    match indices.iter().find(|&&j| j == 0 || j > q) {
        Some(&index) => Err(AddressError { index, q }),
        None => Ok(()),
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[usize]) -> fmt::Result {
    for (i, j) in word.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{j}")?;
    }
    Ok(())
}

/// Finite digit string `j_1 ... j_k` (1-based), front entry outermost.
/// Its point is `sum_s T^s d_{j_s}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAddress(pub Vec<usize>);

impl FiniteAddress {
    pub fn new(indices: Vec<usize>) -> Self {
        FiniteAddress(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Address of `phi_j` applied to this point.
    pub fn prepend(&self, j: usize) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(j);
        out.extend_from_slice(&self.0);
        FiniteAddress(out)
    }
}

impl fmt::Display for FiniteAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

/// Eventually periodic address: `prefix` followed by `period` repeated
/// forever. The period is kept primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EpAddress {
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl EpAddress {
    /// Panics if `period` is empty.
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let p = primitive_period(&period);
        let mut period = period;
        period.truncate(p);
        EpAddress { prefix, period }
    }

    pub fn periodic(period: Vec<usize>) -> Self {
        Self::new(Vec::new(), period)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// `s`-th digit (1-based) of the infinite sequence.
    pub fn digit(&self, s: usize) -> usize {
        let m = self.prefix.len();
        if s <= m {
            self.prefix[s - 1]
        } else {
            self.period[(s - m - 1) % self.period.len()]
        }
    }

    /// The first `len` digits.
    pub fn truncate(&self, len: usize) -> FiniteAddress {
        FiniteAddress((1..=len).map(|s| self.digit(s)).collect())
    }
}

impl fmt::Display for EpAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write_word(f, &self.prefix)?;
            f.write_str(" ")?;
        }
        f.write_str("(")?;
        write_word(f, &self.period)?;
        f.write_str(")*")
    }
}

/// Length of the shortest `p` dividing `word.len()` with `word` a power of
/// its first `p` letters.
fn primitive_period(word: &[usize]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}
