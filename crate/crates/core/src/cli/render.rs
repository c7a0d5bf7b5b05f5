use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hull::convex_hull;
use crate::ifs::{attractor_radius_bound, IfsModel, RadiusError, VertexLedger};
use crate::numeric::{Scalar, Vector};

pub const MAX_SAMPLES: usize = 1_000_000;

/// What to draw besides the sampled attractor.
#[derive(Debug, Clone, Default)]
pub struct Overlay {
    /// Vertex lists of `conv(A_1)`, `conv(A_2)`, ... (original coordinates).
    pub hulls: Vec<Vec<[f64; 2]>>,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("at most {MAX_SAMPLES} sample points, got {0}")]
    TooManyPoints(usize),
    #[error(transparent)]
    Radius(#[from] RadiusError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn planar(coords: &[f64]) -> [f64; 2] {
    [coords[0], coords.get(1).copied().unwrap_or(0.0)]
}

/// Hull outline of a ledger projected to the first two coordinates.
pub fn hull_outline<S: Scalar>(model: &IfsModel<S>, ledger: &VertexLedger<S>) -> Vec<[f64; 2]> {
    let shift = model.normalization_shift().to_f64();
    let projected: Vec<Vector<f64>> = ledger
        .entries()
        .iter()
        .map(|e| {
            let p: Vec<f64> = e.point.to_f64().iter().zip(&shift).map(|(a, b)| a + b).collect();
            let [x, y] = planar(&p);
            Vector::new(vec![x, y])
        })
        .collect();
    match convex_hull(&projected, 1e-12) {
        Ok(h) => h.vertices().iter().map(|v| [v[0], v[1]]).collect(),
        Err(_) => Vec::new(),
    }
}

/// SVG of `points` attractor samples, each the image of the origin under
/// `steps` maps chosen uniformly with a seeded generator. Coordinates are
/// projected to the first two axes; the view box is the radius bound around
/// the attractor's translation.
pub fn render_svg<S: Scalar>(
    model: &IfsModel<S>,
    steps: usize,
    points: usize,
    seed: u64,
    overlay: &Overlay,
) -> Result<String, RenderError> {
    if points > MAX_SAMPLES {
        return Err(RenderError::TooManyPoints(points));
    }
    let fm = model.to_f64();
    let radius = attractor_radius_bound(&fm)?.max(1e-9) * 1.02;
    let [cx, cy] = planar(&fm.normalization_shift().to_f64());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = fm.q();

    let mut svg = String::new();
    let (x0, y0, w) = (cx - radius, -(cy + radius), 2.0 * radius);
    let stroke = w / 500.0;
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" viewBox="{x0:.6} {y0:.6} {w:.6} {w:.6}">"#
    );
    let _ = writeln!(svg, r#"<rect x="{x0:.6}" y="{y0:.6}" width="{w:.6}" height="{w:.6}" fill="white"/>"#);

    let mut path = String::new();
    let mut digits = vec![0usize; steps];
    for _ in 0..points {
        for d in digits.iter_mut() {
            *d = rng.gen_range(1..=q);
        }
        let x = digits
            .iter()
            .rev()
            .fold(Vector::<f64>::zeros(fm.dim()), |acc, &j| fm.apply_map(j, &acc));
        let [px, py] = planar(&fm.to_original(&x).to_f64());
        let _ = write!(path, "M{px:.6} {:.6}h0", -py);
    }
    let _ = writeln!(
        svg,
        r#"<path d="{path}" stroke="black" stroke-width="{:.6}" stroke-linecap="round"/>"#,
        stroke * 1.5
    );

    let count = overlay.hulls.len().max(1) as f64;
    for (i, hull) in overlay.hulls.iter().enumerate() {
        if hull.is_empty() {
            continue;
        }
        let pts: Vec<String> = hull.iter().map(|[x, y]| format!("{x:.6},{:.6}", -y)).collect();
        let shade = (40.0 + 180.0 * (i as f64) / count) as u8;
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="none" stroke="rgb({shade},80,{})" stroke-width="{stroke:.6}"/>"#,
            pts.join(" "),
            255 - shade
        );
    }
    for [x, y] in &overlay.vertices {
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.6}" cy="{:.6}" r="{:.6}" fill="red"/>"#,
            -y,
            stroke * 3.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_svg(path: &Path, svg: &str) -> Result<(), RenderError> {
    std::fs::write(path, svg).map_err(|source| RenderError::Io {
        path: path.display().to_string(),
        source,
    })
}
