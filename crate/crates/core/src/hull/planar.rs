use std::cmp::Ordering;

use crate::numeric::Scalar;

/// Twice the signed area of `(o, a, b)`.
pub(crate) fn cross2<S: Scalar>(o: &[S], a: &[S], b: &[S]) -> S {
    (a[0].clone() - &o[0]) * &(b[1].clone() - &o[1]) - (a[1].clone() - &o[1]) * &(b[0].clone() - &o[0])
}

/// Andrew's monotone chain over 2D points. Returns indices of the strictly
/// convex vertices in counterclockwise order, starting at the
/// lexicographically smallest point. Turns whose doubled area is within
/// `area_tol` of zero count as collinear and the middle point is dropped.
///
/// Expects at least three affinely independent points.
pub(crate) fn monotone_chain<S: Scalar>(points: &[[S; 2]], area_tol: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp_scalar(&points[j][0])
            .then_with(|| points[i][1].total_cmp_scalar(&points[j][1]))
            .then(i.cmp(&j))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);

    let left_turn = |o: usize, a: usize, b: usize| {
        cross2(&points[o], &points[a], &points[b]).sign_within(area_tol) == Ordering::Greater
    };

    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for &idx in &order {
        while hull.len() >= 2 && !left_turn(hull[hull.len() - 2], hull[hull.len() - 1], idx) {
            hull.pop();
        }
        hull.push(idx);
    }
    let lower_len = hull.len() + 1;
    for &idx in order.iter().rev().skip(1) {
        while hull.len() >= lower_len && !left_turn(hull[hull.len() - 2], hull[hull.len() - 1], idx) {
            hull.pop();
        }
        hull.push(idx);
    }
    hull.pop();
    hull
}
