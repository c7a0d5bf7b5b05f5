use rayon::prelude::*;
use thiserror::Error;

use crate::hull::{convex_hull, convex_hull_with_sources, Polytope};
use crate::numeric::{Scalar, Vector};

use super::{FiniteAddress, IfsModel};

pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumerating {q}^{k} digit strings exceeds the budget of {budget}")]
pub struct BudgetExceeded {
    pub q: usize,
    pub k: usize,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry<S> {
    pub point: Vector<S>,
    pub address: FiniteAddress,
}

/// The vertices `V_k` of `conv(A_k)`, each with a length-`k` address.
/// Entries are sorted by address.
#[derive(Debug, Clone)]
pub struct VertexLedger<S> {
    step: usize,
    entries: Vec<LedgerEntry<S>>,
    hull: Polytope<S>,
}

impl<S: Scalar> VertexLedger<S> {
    /// `A_0 = {0}`.
    pub fn initial(model: &IfsModel<S>) -> Self {
        let origin = Vector::zeros(model.dim());
        let hull = convex_hull(std::slice::from_ref(&origin), model.tolerance().eps_geom)
            .expect("one point");
        VertexLedger {
            step: 0,
            entries: vec![LedgerEntry {
                point: origin,
                address: FiniteAddress::default(),
            }],
            hull,
        }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn entries(&self) -> &[LedgerEntry<S>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn hull(&self) -> &Polytope<S> {
        &self.hull
    }

    pub fn points(&self) -> Vec<Vector<S>> {
        self.entries.iter().map(|e| e.point.clone()).collect()
    }
}

/// `V_{k+1}` from `V_k`: hull the images `T(v + d_j)` of the current
/// vertices. Vertices of the hull of a union of affine images of a hull
/// come from images of its vertices, so nothing else is needed.
///
/// Coincident candidates keep the lexicographically smallest address.
pub fn step_hull<S: Scalar>(model: &IfsModel<S>, ledger: &VertexLedger<S>) -> VertexLedger<S> {
    // Generated j-major over address-sorted entries, so candidates come out
    // sorted by address and the hull's smallest-source rule picks the
    // smallest address among duplicates.
    let candidates: Vec<LedgerEntry<S>> = (1..=model.q())
        .flat_map(|j| {
            ledger.entries.iter().map(move |e| LedgerEntry {
                point: model.apply_map(j, &e.point),
                address: e.address.prepend(j),
            })
        })
        .collect();
    let points: Vec<Vector<S>> = candidates.iter().map(|c| c.point.clone()).collect();
    let (hull, sources) =
        convex_hull_with_sources(&points, model.tolerance().eps_geom).expect("nonempty, dimension checked");
    let mut sources = sources;
    sources.sort_unstable();
    let entries = sources.into_iter().map(|i| candidates[i].clone()).collect();
    VertexLedger {
        step: ledger.step + 1,
        entries,
        hull,
    }
}

/// Iterate [`step_hull`] from `A_0` up to step `k`.
pub fn ledger_at<S: Scalar>(model: &IfsModel<S>, k: usize) -> VertexLedger<S> {
    let mut ledger = VertexLedger::initial(model);
    for _ in 0..k {
        ledger = step_hull(model, &ledger);
    }
    ledger
}

/// Oracle: hull of all `q^k` points of `A_k`, enumerated directly.
pub fn brute_force_vertices<S: Scalar>(
    model: &IfsModel<S>,
    k: usize,
    budget: u64,
) -> Result<Polytope<S>, BudgetExceeded> {
    let q = model.q();
    let over = BudgetExceeded { q, k, budget };
    let total = (q as u64).checked_pow(k as u32).ok_or(over.clone())?;
    if total > budget {
        return Err(over);
    }
    // terms[s][j] = T^{s+1} d_{j+1}
    let mut terms: Vec<Vec<Vector<S>>> = Vec::with_capacity(k);
    let mut power = model.matrix().clone();
    for _ in 0..k {
        terms.push(
            model
                .digits()
                .iter()
                .map(|d| power.apply(d).expect("dimensions checked"))
                .collect(),
        );
        power = power.mul(model.matrix()).expect("square");
    }
    let origin = Vector::zeros(model.dim());
    let points: Vec<Vector<S>> = if k == 0 {
        vec![origin]
    } else {
        (0..q)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                enumerate(&terms, 1, terms[0][first].clone(), &mut out);
                out
            })
            .collect()
    };
    Ok(convex_hull(&points, model.tolerance().eps_geom).expect("nonempty"))
}

fn enumerate<S: Scalar>(terms: &[Vec<Vector<S>>], depth: usize, acc: Vector<S>, out: &mut Vec<Vector<S>>) {
    if depth == terms.len() {
        out.push(acc);
        return;
    }
    for term in &terms[depth] {
        enumerate(terms, depth + 1, acc.add(term), out);
    }
}
