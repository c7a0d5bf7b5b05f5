//! Convex hulls of finite point sets in R^1, R^2 and R^3.
//!
//! Every hull records its affine dimension. Lower-dimensional hulls carry
//! the equalities of their affine carrier plus relative facet inequalities,
//! so containment works uniformly. Rational inputs give exact predicates;
//! float inputs use a distance tolerance of `eps_geom * scale`, where scale
//! is the largest absolute input coordinate.

mod distance;
mod planar;
mod spatial;

use std::cmp::Ordering;

use thiserror::Error;

use crate::numeric::{Scalar, Vector};

pub use distance::{distance_to, hausdorff};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("convex hull of an empty point set")]
    Empty,
    #[error("points of dimension {found} in a {expected}-dimensional hull")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} is not supported (1..=3)")]
    UnsupportedDimension(usize),
    #[error("polytope has affine dimension {affine} < ambient dimension {ambient}")]
    Degenerate { affine: usize, ambient: usize },
}

/// Halfspace `normal . x <= offset` (or hyperplane, for carrier equalities).
#[derive(Clone, Debug, PartialEq)]
pub struct Facet<S> {
    pub normal: Vector<S>,
    pub offset: S,
}

impl<S: Scalar> Facet<S> {
    fn through(normal: Vector<S>, point: &Vector<S>) -> Self {
        let offset = normal.dot(point);
        Facet { normal, offset }
    }

    /// `normal . x - offset`
    pub fn excess(&self, x: &Vector<S>) -> S {
        self.normal.dot(x) - &self.offset
    }
}

/// Convex polytope with its vertex description and halfspace description.
#[derive(Clone, Debug)]
pub struct Polytope<S> {
    ambient_dim: usize,
    affine_dim: usize,
    vertices: Vec<Vector<S>>,
    faces: Vec<[usize; 3]>,
    facets: Vec<Facet<S>>,
    carrier: Vec<Facet<S>>,
    slack: f64,
}

impl<S: Scalar> Polytope<S> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    /// Vertices: a counterclockwise cycle for polygons, lexicographically
    /// sorted otherwise.
    pub fn vertices(&self) -> &[Vector<S>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Boundary triangles (indices into `vertices`) of a 3-polytope, or the
    /// fan triangulation of a polygon in R^3.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Facet inequalities; relative to the affine carrier when degenerate.
    pub fn inequalities(&self) -> &[Facet<S>] {
        &self.facets
    }

    /// Equalities describing the affine carrier (empty when full-dimensional).
    pub fn carrier(&self) -> &[Facet<S>] {
        &self.carrier
    }

    /// Absolute distance tolerance used by predicates (0 in rational mode).
    pub fn slack(&self) -> f64 {
        self.slack
    }

    /// Outward facet normals with offsets. Fails for degenerate polytopes.
    pub fn facet_normals(&self) -> Result<Vec<Facet<S>>, HullError> {
        if self.is_full_dimensional() {
            Ok(self.facets.clone())
        } else {
            Err(HullError::Degenerate {
                affine: self.affine_dim,
                ambient: self.ambient_dim,
            })
        }
    }

    /// Closed containment, exact in rational mode.
    pub fn contains(&self, x: &Vector<S>) -> bool {
        self.contains_with_slack(x, self.slack)
    }

    /// Closed containment allowing points up to `slack` (absolute distance)
    /// outside. `slack` is ignored in rational mode.
    pub fn contains_with_slack(&self, x: &Vector<S>, slack: f64) -> bool {
        if x.dim() != self.ambient_dim {
            return false;
        }
        let carrier_ok = self.carrier.iter().all(|eq| {
            eq.excess(x)
                .is_zero_within(slack * eq.normal.norm_f64())
        });
        carrier_ok
            && self.facets.iter().all(|f| {
                f.excess(x).sign_within(slack * f.normal.norm_f64()) != Ordering::Greater
            })
    }

    /// Largest pairwise vertex distance.
    pub fn diameter_f64(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max(a.sub(b).norm_f64());
            }
        }
        best
    }
}

/// Convex hull of a nonempty point set.
pub fn convex_hull<S: Scalar>(points: &[Vector<S>], eps_geom: f64) -> Result<Polytope<S>, HullError> {
    convex_hull_with_sources(points, eps_geom).map(|(p, _)| p)
}

/// Convex hull plus, for each output vertex, the index of the input point it
/// came from. Among duplicate inputs the smallest index is reported.
pub fn convex_hull_with_sources<S: Scalar>(
    points: &[Vector<S>],
    eps_geom: f64,
) -> Result<(Polytope<S>, Vec<usize>), HullError> {
    let first = points.first().ok_or(HullError::Empty)?;
    let n = first.dim();
    if !(1..=3).contains(&n) {
        return Err(HullError::UnsupportedDimension(n));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != n) {
        return Err(HullError::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }

    // Unique points, lexicographic order, smallest source index kept.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].lex_cmp(&points[j]).then(i.cmp(&j)));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    let unique: Vec<Vector<S>> = order.iter().map(|&i| points[i].clone()).collect();

    let scale = unique
        .iter()
        .map(Vector::max_abs_f64)
        .fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let slack = if S::is_exact() { 0.0 } else { eps_geom * scale };

    let frame = affine_frame(&unique, slack);
    let (poly, local) = match frame.len() {
        1 => point_hull(&unique, slack),
        2 => segment_hull(&unique, &frame, slack),
        3 if n == 2 => planar_hull(&unique, slack),
        3 => polygon_in_space(&unique, &frame, slack),
        _ => solid_hull(&unique, &frame, slack, eps_geom),
    };
    let sources = local.into_iter().map(|k| order[k]).collect();
    Ok((poly, sources))
}

/// Indices of up to four points spanning the affine hull: the first point,
/// then greedily the farthest point from the current flat.
fn affine_frame<S: Scalar>(points: &[Vector<S>], slack: f64) -> Vec<usize> {
    let n = points[0].dim();
    let p0 = &points[0];
    let mut frame = vec![0];

    let best = |score: &dyn Fn(&Vector<S>) -> S| {
        points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, score(p)))
            .max_by(|a, b| a.1.total_cmp_scalar(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty")
    };

    let (i1, d1) = best(&|p: &Vector<S>| {
        let d = p.sub(p0);
        d.dot(&d)
    });
    if d1.is_zero_within(slack * slack) {
        return frame;
    }
    frame.push(i1);
    if n == 1 {
        return frame;
    }
    let u = points[i1].sub(p0);
    let uu = u.dot(&u).to_f64();
    let perp = |p: &Vector<S>| -> Vector<S> {
        let w = p.sub(p0);
        if n == 2 {
            Vector::new(vec![u[0].clone() * &w[1] - u[1].clone() * &w[0]])
        } else {
            u.cross(&w)
        }
    };
    // |u x w|^2 = |u|^2 dist(w, line)^2
    let (i2, d2) = best(&|p: &Vector<S>| {
        let c = perp(p);
        c.dot(&c)
    });
    if d2.is_zero_within(slack * slack * uu) {
        return frame;
    }
    frame.push(i2);
    if n == 2 {
        return frame;
    }
    let normal = u.cross(&points[i2].sub(p0));
    let nn = normal.dot(&normal).to_f64();
    let (i3, d3) = best(&|p: &Vector<S>| {
        let h = normal.dot(&p.sub(p0));
        h.clone() * &h
    });
    if d3.is_zero_within(slack * slack * nn) {
        return frame;
    }
    frame.push(i3);
    frame
}

fn point_hull<S: Scalar>(points: &[Vector<S>], slack: f64) -> (Polytope<S>, Vec<usize>) {
    let v = points[0].clone();
    let n = v.dim();
    let carrier = (0..n)
        .map(|axis| {
            let mut e = vec![S::zero(); n];
            e[axis] = S::one();
            Facet::through(Vector::new(e), &v)
        })
        .collect();
    let poly = Polytope {
        ambient_dim: n,
        affine_dim: 0,
        vertices: vec![v],
        faces: Vec::new(),
        facets: Vec::new(),
        carrier,
        slack,
    };
    (poly, vec![0])
}

fn segment_hull<S: Scalar>(
    points: &[Vector<S>],
    frame: &[usize],
    slack: f64,
) -> (Polytope<S>, Vec<usize>) {
    let n = points[0].dim();
    let base = &points[frame[0]];
    let u = points[frame[1]].sub(base);
    let along = |p: &Vector<S>| u.dot(&p.sub(base));
    let pick = |want: Ordering| {
        (0..points.len())
            .reduce(|best, i| {
                let ord = along(&points[i]).total_cmp_scalar(&along(&points[best]));
                if ord == want {
                    i
                } else {
                    best
                }
            })
            .expect("nonempty")
    };
    let (lo, hi) = (pick(Ordering::Less), pick(Ordering::Greater));
    let (a, b) = (points[lo].clone(), points[hi].clone());

    let carrier: Vec<Facet<S>> = match n {
        1 => Vec::new(),
        2 => vec![Facet::through(Vector::new(vec![-u[1].clone(), u[0].clone()]), &a)],
        _ => {
            let major = (0..3)
                .max_by(|&i, &j| u[i].abs().total_cmp_scalar(&u[j].abs()).then(j.cmp(&i)))
                .expect("three axes");
            (0..3)
                .filter(|&k| k != major)
                .map(|k| {
                    let mut e = vec![S::zero(); 3];
                    e[k] = S::one();
                    Facet::through(u.cross(&Vector::new(e)), &a)
                })
                .collect()
        }
    };
    let facets = vec![Facet::through(u.clone(), &b), Facet::through(u.neg(), &a)];
    let (vertices, sources) = if a.lex_cmp(&b) == Ordering::Greater {
        (vec![b, a], vec![hi, lo])
    } else {
        (vec![a, b], vec![lo, hi])
    };
    let poly = Polytope {
        ambient_dim: n,
        affine_dim: 1,
        vertices,
        faces: Vec::new(),
        facets,
        carrier,
        slack,
    };
    (poly, sources)
}

fn planar_hull<S: Scalar>(points: &[Vector<S>], slack: f64) -> (Polytope<S>, Vec<usize>) {
    let flat: Vec<[S; 2]> = points
        .iter()
        .map(|p| [p[0].clone(), p[1].clone()])
        .collect();
    let scale = slack_scale(points);
    let cycle = planar::monotone_chain(&flat, slack * scale);
    if cycle.len() < 3 {
        return segment_hull(points, &[0, cycle[cycle.len() - 1]], slack);
    }
    let vertices: Vec<Vector<S>> = cycle.iter().map(|&i| points[i].clone()).collect();
    let facets = (0..vertices.len())
        .map(|k| {
            let (a, b) = (&vertices[k], &vertices[(k + 1) % vertices.len()]);
            let edge = b.sub(a);
            Facet::through(Vector::new(vec![edge[1].clone(), -edge[0].clone()]), a)
        })
        .collect();
    let poly = Polytope {
        ambient_dim: 2,
        affine_dim: 2,
        vertices,
        faces: Vec::new(),
        facets,
        carrier: Vec::new(),
        slack,
    };
    (poly, cycle)
}

fn polygon_in_space<S: Scalar>(
    points: &[Vector<S>],
    frame: &[usize],
    slack: f64,
) -> (Polytope<S>, Vec<usize>) {
    let base = &points[frame[0]];
    let normal = points[frame[1]]
        .sub(base)
        .cross(&points[frame[2]].sub(base));
    let drop = (0..3)
        .max_by(|&i, &j| normal[i].abs().total_cmp_scalar(&normal[j].abs()).then(j.cmp(&i)))
        .expect("three axes");
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let flat: Vec<[S; 2]> = points
        .iter()
        .map(|p| [p[keep[0]].clone(), p[keep[1]].clone()])
        .collect();
    let scale = slack_scale(points);
    let mut cycle = planar::monotone_chain(&flat, slack * scale);
    if cycle.len() < 3 {
        return segment_hull(points, &[0, cycle[cycle.len() - 1]], slack);
    }
    {
        let (a, b, c) = (&points[cycle[0]], &points[cycle[1]], &points[cycle[2]]);
        if b.sub(a).cross(&c.sub(a)).dot(&normal).is_negative() {
            cycle.reverse();
        }
    }
    let start = (0..cycle.len())
        .min_by(|&i, &j| points[cycle[i]].lex_cmp(&points[cycle[j]]))
        .expect("nonempty cycle");
    cycle.rotate_left(start);

    let vertices: Vec<Vector<S>> = cycle.iter().map(|&i| points[i].clone()).collect();
    let m = vertices.len();
    // In-plane outward normals: (b - a) x N points away from the interior
    // for a counterclockwise cycle around N.
    let facets = (0..m)
        .map(|k| {
            let (a, b) = (&vertices[k], &vertices[(k + 1) % m]);
            Facet::through(b.sub(a).cross(&normal), a)
        })
        .collect();
    let faces = (1..m - 1).map(|k| [0, k, k + 1]).collect();
    let poly = Polytope {
        ambient_dim: 3,
        affine_dim: 2,
        vertices,
        faces,
        facets,
        carrier: vec![Facet::through(normal, base)],
        slack,
    };
    (poly, cycle)
}

fn solid_hull<S: Scalar>(
    points: &[Vector<S>],
    frame: &[usize],
    slack: f64,
    eps_geom: f64,
) -> (Polytope<S>, Vec<usize>) {
    let rel = if S::is_exact() { 0.0 } else { eps_geom };
    let seed = [frame[0], frame[1], frame[2], frame[3]];
    let hull = spatial::incremental_hull(points, seed, slack, rel);
    let mut sources = hull.vertices.clone();
    sources.sort_by(|&i, &j| points[i].lex_cmp(&points[j]));
    let position = |src: usize| sources.iter().position(|&s| s == src).expect("vertex");
    let vertices: Vec<Vector<S>> = sources.iter().map(|&i| points[i].clone()).collect();
    let mut faces = Vec::new();
    let mut facets = Vec::new();
    for (normal, offset, polygon) in hull.facets {
        let local: Vec<usize> = polygon.iter().map(|&i| position(i)).collect();
        for k in 1..local.len().saturating_sub(1) {
            faces.push([local[0], local[k], local[k + 1]]);
        }
        facets.push(Facet { normal, offset });
    }
    let poly = Polytope {
        ambient_dim: 3,
        affine_dim: 3,
        vertices,
        faces,
        facets,
        carrier: Vec::new(),
        slack,
    };
    (poly, sources)
}

/// Length scale turning a distance slack into a doubled-area slack.
fn slack_scale<S: Scalar>(points: &[Vector<S>]) -> f64 {
    points.iter().map(Vector::max_abs_f64).fold(0.0, f64::max).max(1e-300) * 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn v(coords: &[(i64, i64)]) -> Vector<Q> {
        Vector::from_ratios(coords)
    }

    fn vi(coords: &[i64]) -> Vector<Q> {
        Vector::from_ints(coords)
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(convex_hull::<Q>(&[], 1e-9).unwrap_err(), HullError::Empty);
    }

    #[test]
    fn unit_triangle() {
        let p = convex_hull(&[vi(&[0, 0]), vi(&[1, 0]), vi(&[0, 1])], 1e-9).unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.vertices(), &[vi(&[0, 0]), vi(&[1, 0]), vi(&[0, 1])]);
    }

    #[test]
    fn collinear_points_give_segment() {
        let pts: Vec<Vector<Q>> = [(0, 1), (1, 8), (1, 4), (3, 8)]
            .iter()
            .map(|&r| v(&[r]))
            .collect();
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices(), &[v(&[(0, 1)]), v(&[(3, 8)])]);
        assert!(p.contains(&v(&[(1, 5)])));
        assert!(!p.contains(&v(&[(1, 2)])));
    }

    #[test]
    fn sierpinski_second_level_drops_hypotenuse_points() {
        // A_2 = T(D + A_1) for T = I/2, D = {0, e1, e2}
        let pts = [
            v(&[(0, 1), (0, 1)]), v(&[(1, 4), (0, 1)]), v(&[(0, 1), (1, 4)]),
            v(&[(1, 2), (0, 1)]), v(&[(3, 4), (0, 1)]), v(&[(1, 2), (1, 4)]),
            v(&[(0, 1), (1, 2)]), v(&[(1, 4), (1, 2)]), v(&[(0, 1), (3, 4)]),
        ];
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(
            p.vertices(),
            &[v(&[(0, 1), (0, 1)]), v(&[(3, 4), (0, 1)]), v(&[(0, 1), (3, 4)])]
        );
        assert!(p.contains(&v(&[(1, 2), (1, 4)])));
        assert!(p.contains(&v(&[(1, 4), (1, 2)])));
    }

    #[test]
    fn containment_in_anisotropic_hull() {
        let pts = [
            v(&[(0, 1), (0, 1)]),
            v(&[(3, 4), (0, 1)]),
            v(&[(1, 4), (1, 3)]),
            v(&[(0, 1), (4, 9)]),
        ];
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(p.vertex_count(), 4);
        for vert in p.vertices() {
            assert!(p.contains(vert));
        }
        assert!(p.contains(&v(&[(1, 2), (1, 9)])));
        assert!(!p.contains(&v(&[(3, 4), (1, 10)])));
    }

    #[test]
    fn unit_triangle_facets() {
        let p = convex_hull(&[vi(&[0, 0]), vi(&[1, 0]), vi(&[0, 1])], 1e-9).unwrap();
        let facets = p.facet_normals().unwrap();
        let expected = [(vi(&[0, -1]), 0), (vi(&[1, 1]), 1), (vi(&[-1, 0]), 0)];
        assert_eq!(facets.len(), 3);
        for (normal, offset) in expected {
            // match up to positive scaling
            assert!(facets.iter().any(|f| {
                let k = f.normal.dot(&normal) / normal.dot(&normal);
                k > Q::from_int(0) && f.normal == normal.scale(&k) && f.offset == Q::from_int(offset) * &k
            }));
        }
    }

    #[test]
    fn unit_square_has_axis_normals() {
        let pts = [vi(&[0, 0]), vi(&[1, 0]), vi(&[1, 1]), vi(&[0, 1])];
        let facets = convex_hull(&pts, 1e-9).unwrap().facet_normals().unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            assert_eq!(f.normal.coords().iter().filter(|c| **c != Q::from_int(0)).count(), 1);
        }
    }

    #[test]
    fn degenerate_facets_are_inapplicable() {
        let p = convex_hull(&[vi(&[0, 0]), vi(&[2, 1])], 1e-9).unwrap();
        assert!(matches!(p.facet_normals(), Err(HullError::Degenerate { affine: 1, ambient: 2 })));
    }

    #[test]
    fn single_point_and_segment_in_space() {
        let p = convex_hull(&[vi(&[1, 2, 3]), vi(&[1, 2, 3])], 1e-9).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert!(p.contains(&vi(&[1, 2, 3])));
        assert!(!p.contains(&vi(&[1, 2, 4])));

        let s = convex_hull(&[vi(&[0, 0, 0]), vi(&[2, 2, 2]), vi(&[1, 1, 1])], 1e-9).unwrap();
        assert_eq!(s.affine_dim(), 1);
        assert_eq!(s.vertex_count(), 2);
        assert!(s.contains(&vi(&[1, 1, 1])));
        assert!(!s.contains(&vi(&[1, 1, 0])));
        assert!(!s.contains(&vi(&[3, 3, 3])));
    }

    #[test]
    fn polygon_in_space() {
        let pts = [
            vi(&[0, 0, 1]),
            vi(&[2, 0, 1]),
            vi(&[2, 2, 1]),
            vi(&[0, 2, 1]),
            vi(&[1, 1, 1]),
            vi(&[1, 0, 1]),
        ];
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.faces().len(), 2);
        assert!(p.contains(&v(&[(1, 2), (3, 2), (1, 1)])));
        assert!(!p.contains(&v(&[(1, 2), (3, 2), (2, 1)])));
        assert!(!p.contains(&vi(&[3, 1, 1])));
    }

    #[test]
    fn cube_with_face_and_edge_points() {
        let mut pts = Vec::new();
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    pts.push(vi(&[x, y, z]));
                }
            }
        }
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(p.affine_dim(), 3);
        assert_eq!(p.vertex_count(), 8);
        assert_eq!(p.facet_normals().unwrap().len(), 6);
        assert_eq!(p.faces().len(), 12);
        for q in &pts {
            assert!(p.contains(q));
        }
        assert!(!p.contains(&vi(&[3, 1, 1])));
        assert!(!p.contains(&v(&[(1, 1), (1, 1), (-1, 100)])));
    }

    #[test]
    fn octahedron_float() {
        let pts: Vec<Vector<f64>> = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [0.1, 0.1, 0.1],
            [0.5, 0.5, 0.0],
        ]
        .iter()
        .map(|c| Vector::new(c.to_vec()))
        .collect();
        let p = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.facet_normals().unwrap().len(), 8);
        assert!(p.contains(&Vector::new(vec![0.3, 0.3, 0.3])));
        assert!(!p.contains(&Vector::new(vec![0.4, 0.4, 0.4])));
    }

    #[test]
    fn sources_point_back_into_input() {
        let pts = [vi(&[5, 5]), vi(&[0, 0]), vi(&[1, 1]), vi(&[0, 0]), vi(&[4, 0])];
        let (p, src) = convex_hull_with_sources(&pts, 1e-9).unwrap();
        assert_eq!(src.len(), p.vertex_count());
        for (vert, &s) in p.vertices().iter().zip(&src) {
            assert_eq!(&pts[s], vert);
        }
        assert_eq!(src[0], 1);
    }
}
