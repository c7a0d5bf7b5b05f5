use thiserror::Error;

use crate::ifs::{EpAddress, FiniteAddress, VertexLedger};
use crate::numeric::Scalar;

/// Smallest `i` (1-based) with `counts[i-1] == counts[i]`.
pub fn detect_stabilization(counts: &[usize]) -> Option<usize> {
    counts.windows(2).position(|w| w[0] == w[1]).map(|p| p + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no eventually periodic pattern with {min_reps} repetitions in address {address}")]
pub struct ExtractionFailure {
    pub address: FiniteAddress,
    pub min_reps: usize,
}

/// Eventually periodic reading of one finite address.
///
/// Among all `(m, p)` with `m + min_reps * p <= N` and `j_s = j_{s+p}` for
/// `m < s <= N - p`, the one with the shortest `m + p` wins, then the
/// shortest period. Preferring short periods outright would accept a
/// constant tail of `min_reps` letters as period 1.
pub fn extract_ep_address(address: &FiniteAddress, min_reps: usize) -> Result<EpAddress, ExtractionFailure> {
    let j = address.indices();
    let n = j.len();
    let reps = min_reps.max(1);
    let fits = |m: usize, p: usize| (m..n - p).all(|s| j[s] == j[s + p]);
    for total in 1..=n {
        for p in 1..=total {
            let m = total - p;
            if m + reps * p <= n && fits(m, p) {
                return Ok(EpAddress::new(j[..m].to_vec(), j[m..m + p].to_vec()));
            }
        }
    }
    Err(ExtractionFailure {
        address: address.clone(),
        min_reps,
    })
}

/// One e.p. address per ledger vertex, in ledger order.
pub fn extract_ep_addresses<S: Scalar>(
    ledger: &VertexLedger<S>,
    min_reps: usize,
) -> Result<Vec<EpAddress>, ExtractionFailure> {
    ledger
        .entries()
        .iter()
        .map(|e| extract_ep_address(&e.address, min_reps))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(word: &[usize], reps: usize) -> Result<EpAddress, ExtractionFailure> {
        extract_ep_address(&FiniteAddress::new(word.to_vec()), reps)
    }

    #[test]
    fn stabilization_index() {
        assert_eq!(detect_stabilization(&[3, 3, 3]), Some(1));
        assert_eq!(detect_stabilization(&[3, 4, 5, 6]), None);
        assert_eq!(detect_stabilization(&[3, 4, 4]), Some(2));
        assert_eq!(detect_stabilization(&[3]), None);
    }

    #[test]
    fn worked_extractions() {
        assert_eq!(ep(&[2, 2], 2).unwrap(), EpAddress::periodic(vec![2]));
        assert_eq!(ep(&[1, 2, 1, 2, 1, 2], 3).unwrap(), EpAddress::periodic(vec![1, 2]));
        assert_eq!(ep(&[1, 2, 2, 1, 2, 2, 2], 3).unwrap(), EpAddress::new(vec![1, 2, 2, 1], vec![2]));
    }

    #[test]
    fn long_period_beats_constant_tail() {
        let word = [2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 2];
        let got = ep(&word, 3).unwrap();
        assert_eq!(got, EpAddress::periodic(vec![2, 2, 2, 2, 1, 1, 1, 1]));
    }

    #[test]
    fn too_short_fails() {
        assert!(ep(&[1, 2, 3], 3).is_err());
        assert!(ep(&[], 3).is_err());
    }
}
