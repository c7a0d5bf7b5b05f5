use std::cmp::Ordering;
use std::collections::HashSet;

use crate::numeric::{Scalar, Vector};

use super::planar::monotone_chain;

/// Output of the 3D hull: extreme input indices and the merged facets.
pub(crate) struct SpatialHull<S> {
    pub vertices: Vec<usize>,
    /// `(outward normal, offset, polygon)`; polygon lists input indices
    /// counterclockwise around the outward normal.
    pub facets: Vec<(Vector<S>, S, Vec<usize>)>,
}

struct Face<S> {
    v: [usize; 3],
    normal: Vector<S>,
    offset: S,
    norm: f64,
    alive: bool,
}

struct Tolerances {
    /// Absolute distance below which a point counts as on a plane.
    dist: f64,
    /// Relative tolerance for parallelism and rank decisions.
    rel: f64,
}

impl<S: Scalar> Face<S> {
    fn new(points: &[Vector<S>], v: [usize; 3]) -> Self {
        let (a, b, c) = (&points[v[0]], &points[v[1]], &points[v[2]]);
        let normal = b.sub(a).cross(&c.sub(a));
        let offset = normal.dot(a);
        let norm = normal.norm_f64();
        Face {
            v,
            normal,
            offset,
            norm,
            alive: true,
        }
    }

    fn height(&self, p: &Vector<S>) -> S {
        self.normal.dot(p) - &self.offset
    }

    fn side(&self, p: &Vector<S>, tol: &Tolerances) -> Ordering {
        self.height(p).sign_within(tol.dist * self.norm)
    }
}

/// Incremental hull of 3D points. `seed` must index four affinely
/// independent points. Points are processed in input order, so the result is
/// deterministic.
pub(crate) fn incremental_hull<S: Scalar>(
    points: &[Vector<S>],
    seed: [usize; 4],
    dist_tol: f64,
    rel_tol: f64,
) -> SpatialHull<S> {
    let tol = Tolerances {
        dist: dist_tol,
        rel: rel_tol,
    };
    let quarter = S::from_ratio(1, 4);
    let interior = seed
        .iter()
        .fold(Vector::zeros(3), |acc, &i| acc.add(&points[i]))
        .scale(&quarter);

    let mut faces: Vec<Face<S>> = Vec::new();
    let oriented = |v: [usize; 3]| {
        let f = Face::new(points, v);
        if f.height(&interior).is_positive() {
            Face::new(points, [v[0], v[2], v[1]])
        } else {
            f
        }
    };
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| seed[k]).collect();
        faces.push(oriented([tri[0], tri[1], tri[2]]));
    }

    for (idx, p) in points.iter().enumerate() {
        if seed.contains(&idx) {
            continue;
        }
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && f.side(p, &tol) == Ordering::Greater)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for &fi in &visible {
            let v = faces[fi].v;
            for k in 0..3 {
                edges.insert((v[k], v[(k + 1) % 3]));
            }
        }
        let mut horizon: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(a, b)| !edges.contains(&(b, a)))
            .copied()
            .collect();
        horizon.sort_unstable();
        for &fi in &visible {
            faces[fi].alive = false;
        }
        for (a, b) in horizon {
            faces.push(oriented([a, b, idx]));
        }
        if faces.len() > 64 && faces.iter().filter(|f| f.alive).count() * 2 < faces.len() {
            faces.retain(|f| f.alive);
        }
    }
    faces.retain(|f| f.alive);

    // Merge coplanar triangles into facets.
    let mut planes: Vec<(Vector<S>, S, f64)> = Vec::new();
    for f in &faces {
        let same = planes.iter().any(|(normal, offset, norm)| {
            normal.dot(&f.normal).is_positive()
                && f.v.iter().all(|&i| {
                    (normal.dot(&points[i]) - offset).is_zero_within(tol.dist * norm)
                })
        });
        if !same {
            planes.push((f.normal.clone(), f.offset.clone(), f.norm));
        }
    }

    let mut on_hull: Vec<usize> = faces.iter().flat_map(|f| f.v).collect();
    on_hull.sort_unstable();
    on_hull.dedup();

    let incident: Vec<Vec<usize>> = on_hull
        .iter()
        .map(|&i| {
            planes
                .iter()
                .enumerate()
                .filter(|(_, (normal, offset, norm))| {
                    (normal.dot(&points[i]) - offset).is_zero_within(tol.dist * norm)
                })
                .map(|(g, _)| g)
                .collect()
        })
        .collect();
    let normals: Vec<&Vector<S>> = planes.iter().map(|(n, _, _)| n).collect();
    let vertices: Vec<usize> = on_hull
        .iter()
        .zip(&incident)
        .filter(|(_, groups)| spans_space(groups, &normals, &tol))
        .map(|(&i, _)| i)
        .collect();

    let facets = planes
        .into_iter()
        .enumerate()
        .map(|(g, (normal, offset, _))| {
            let members: Vec<usize> = vertices
                .iter()
                .copied()
                .filter(|&i| {
                    let pos = on_hull.binary_search(&i).expect("hull point");
                    incident[pos].contains(&g)
                })
                .collect();
            let polygon = order_polygon(points, &members, &normal, &tol);
            (normal, offset, polygon)
        })
        .collect();

    SpatialHull { vertices, facets }
}

/// True when the normals of the listed planes have rank 3.
fn spans_space<S: Scalar>(groups: &[usize], normals: &[&Vector<S>], tol: &Tolerances) -> bool {
    for (x, &a) in groups.iter().enumerate() {
        for (y, &b) in groups.iter().enumerate().skip(x + 1) {
            let ab = normals[a].cross(normals[b]);
            let scale_ab = normals[a].norm_f64() * normals[b].norm_f64();
            if ab.is_zero_within(tol.rel * scale_ab) {
                continue;
            }
            for &c in &groups[y + 1..] {
                let triple = ab.dot(normals[c]);
                if !triple.is_zero_within(tol.rel * scale_ab * normals[c].norm_f64()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Order coplanar extreme points counterclockwise around `normal`,
/// starting at the lexicographically smallest.
fn order_polygon<S: Scalar>(
    points: &[Vector<S>],
    members: &[usize],
    normal: &Vector<S>,
    tol: &Tolerances,
) -> Vec<usize> {
    if members.len() < 3 {
        return members.to_vec();
    }
    let drop = (0..3)
        .max_by(|&i, &j| normal[i].abs().total_cmp_scalar(&normal[j].abs()).then(j.cmp(&i)))
        .expect("three axes");
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let projected: Vec<[S; 2]> = members
        .iter()
        .map(|&i| [points[i][keep[0]].clone(), points[i][keep[1]].clone()])
        .collect();
    let area_tol = tol.dist * members.iter().map(|&i| points[i].max_abs_f64()).fold(1.0, f64::max);
    let mut cycle: Vec<usize> = monotone_chain(&projected, area_tol)
        .into_iter()
        .map(|k| members[k])
        .collect();
    if cycle.len() >= 3 {
        let (a, b, c) = (&points[cycle[0]], &points[cycle[1]], &points[cycle[2]]);
        if b.sub(a).cross(&c.sub(a)).dot(normal).is_negative() {
            cycle.reverse();
        }
    }
    let start = (0..cycle.len())
        .min_by(|&i, &j| points[cycle[i]].lex_cmp(&points[cycle[j]]))
        .unwrap_or(0);
    cycle.rotate_left(start);
    cycle
}
