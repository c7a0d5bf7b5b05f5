use crate::numeric::{Scalar, Vector};

use super::Polytope;

type P = Vec<f64>;

fn sub(a: &[f64], b: &[f64]) -> P {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn point_segment(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(&ab, &ab);
    let t = if len2 > 0.0 {
        (dot(&sub(x, a), &ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let closest: P = a.iter().zip(&ab).map(|(ai, di)| ai + t * di).collect();
    norm(&sub(x, &closest))
}

/// Closest-point distance from `x` to triangle `abc` in R^3 (Voronoi-region walk).
fn point_triangle(x: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(x, a);
    let d1 = dot(&ab, &ap);
    let d2 = dot(&ac, &ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return norm(&ap);
    }
    let bp = sub(x, b);
    let d3 = dot(&ab, &bp);
    let d4 = dot(&ac, &bp);
    if d3 >= 0.0 && d4 <= d3 {
        return norm(&bp);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return point_segment(x, a, b);
    }
    let cp = sub(x, c);
    let d5 = dot(&ab, &cp);
    let d6 = dot(&ac, &cp);
    if d6 >= 0.0 && d5 <= d6 {
        return norm(&cp);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return point_segment(x, a, c);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return point_segment(x, b, c);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    let closest: P = (0..3).map(|i| a[i] + ab[i] * v + ac[i] * w).collect();
    norm(&sub(x, &closest))
}

/// Euclidean distance from `x` to the polytope (0 when contained).
pub fn distance_to<S: Scalar>(poly: &Polytope<S>, x: &Vector<S>) -> f64 {
    if poly.contains(x) {
        return 0.0;
    }
    let xf = x.to_f64();
    let verts: Vec<P> = poly.vertices().iter().map(Vector::to_f64).collect();
    match (poly.affine_dim(), poly.ambient_dim()) {
        (0, _) => norm(&sub(&xf, &verts[0])),
        (1, _) => point_segment(&xf, &verts[0], &verts[1]),
        (2, 2) => (0..verts.len())
            .map(|k| point_segment(&xf, &verts[k], &verts[(k + 1) % verts.len()]))
            .fold(f64::INFINITY, f64::min),
        _ => poly
            .faces()
            .iter()
            .map(|f| point_triangle(&xf, &verts[f[0]], &verts[f[1]], &verts[f[2]]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Hausdorff distance between two polytopes of the same ambient dimension.
/// The distance to a convex set is convex, so the directed maxima are
/// attained at vertices.
pub fn hausdorff<S: Scalar>(p: &Polytope<S>, q: &Polytope<S>) -> f64 {
    let directed = |from: &Polytope<S>, to: &Polytope<S>| {
        from.vertices()
            .iter()
            .map(|v| distance_to(to, v))
            .fold(0.0, f64::max)
    };
    directed(p, q).max(directed(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;
    use num_rational::BigRational;

    type Q = BigRational;

    fn hull(pts: &[&[(i64, i64)]]) -> Polytope<Q> {
        let pts: Vec<Vector<Q>> = pts.iter().map(|c| Vector::from_ratios(c)).collect();
        convex_hull(&pts, 1e-9).unwrap()
    }

    #[test]
    fn self_distance_is_zero() {
        let p = hull(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(hausdorff(&p, &p), 0.0);
    }

    #[test]
    fn segment_versus_endpoint() {
        let seg = hull(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]]);
        let pt = hull(&[&[(0, 1), (0, 1)]]);
        assert!((hausdorff(&seg, &pt) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sierpinski_first_two_hulls() {
        let a1 = hull(&[&[(0, 1), (0, 1)], &[(1, 2), (0, 1)], &[(0, 1), (1, 2)]]);
        let a2 = hull(&[&[(0, 1), (0, 1)], &[(3, 4), (0, 1)], &[(0, 1), (3, 4)]]);
        assert!((hausdorff(&a1, &a2) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn distance_to_cube_face_edge_and_corner() {
        let mut pts = Vec::new();
        for &x in &[0, 1] {
            for &y in &[0, 1] {
                for &z in &[0, 1] {
                    pts.push(Vector::<Q>::from_ints(&[x, y, z]));
                }
            }
        }
        let cube = convex_hull(&pts, 1e-9).unwrap();
        let d = |c: &[i64]| distance_to(&cube, &Vector::from_ints(c));
        assert_eq!(d(&[0, 0, 0]), 0.0);
        assert!((d(&[3, 0, 0]) - 2.0).abs() < 1e-15);
        assert!((d(&[2, 2, 0]) - 2f64.sqrt()).abs() < 1e-15);
        assert!((d(&[2, 2, 2]) - 3f64.sqrt()).abs() < 1e-15);
        let inner = Vector::<Q>::from_ratios(&[(1, 2), (1, 2), (1, 2)]);
        assert_eq!(distance_to(&cube, &inner), 0.0);
    }
}
