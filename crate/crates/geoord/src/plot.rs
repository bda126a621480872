//! SVG rendering of curves and orderings: planar curves directly, sphere
//! points by orthographic projection, SE(3) as the translation path with
//! rotation glyphs every few samples.

use crate::error::Result;
use crate::io::{CurveFile, SampleFile};
use crate::lie::MetricWeights;
use crate::sampling::{SamplePoints, SampleSet};

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;

struct Projected {
    path: Vec<[f64; 2]>,
    /// short oriented segments drawn at selected samples
    glyphs: Vec<([f64; 2], [f64; 2])>,
}

fn fit_transform(points: &[[f64; 2]]) -> impl Fn([f64; 2]) -> [f64; 2] {
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p[0]);
        max_x = max_x.max(p[0]);
        min_y = min_y.min(p[1]);
        max_y = max_y.max(p[1]);
    }
    if !min_x.is_finite() {
        (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    move |p: [f64; 2]| {
        [
            MARGIN + (p[0] - min_x) * scale,
            // flip y so the plot reads the usual way up
            CANVAS - MARGIN - (p[1] - min_y) * scale,
        ]
    }
}

fn svg_document(proj: &Projected) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
    ));
    let all: Vec<[f64; 2]> = proj
        .path
        .iter()
        .copied()
        .chain(proj.glyphs.iter().flat_map(|(a, b)| [*a, *b]))
        .collect();
    let tf = fit_transform(&all);
    if !proj.path.is_empty() {
        let mut d = String::new();
        for (i, p) in proj.path.iter().enumerate() {
            let q = tf(*p);
            d.push_str(if i == 0 { "M" } else { " L" });
            d.push_str(&format!("{:.2} {:.2}", q[0], q[1]));
        }
        out.push_str(&format!(
            "  <path d=\"{d}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for (a, b) in &proj.glyphs {
        let (pa, pb) = (tf(*a), tf(*b));
        out.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#d62728\" stroke-width=\"1\"/>\n",
            pa[0], pa[1], pb[0], pb[1]
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Render an interpolated curve. SE(3) curves get a rotation glyph (the
/// projected body x-axis) every `glyph_every` samples.
pub fn render_curve(curve: &CurveFile, glyph_every: usize) -> String {
    let mut proj = Projected {
        path: Vec::new(),
        glyphs: Vec::new(),
    };
    for (idx, s) in curve.samples.iter().enumerate() {
        let p = match s.translation.len() {
            2 => [s.translation[0], s.translation[1]],
            _ => [s.translation[0], s.translation[1]],
        };
        proj.path.push(p);
        if let Some(r) = &s.rotation {
            if glyph_every > 0 && idx % glyph_every == 0 {
                // project the body x-axis column into the plot plane
                let axis = [r[0], r[3]];
                let len = 0.4;
                proj.glyphs
                    .push((p, [p[0] + len * axis[0], p[1] + len * axis[1]]));
            }
        }
    }
    svg_document(&proj)
}

/// Render a sample set, optionally connected in a given order.
pub fn render_samples(
    sample: &SampleFile,
    order: Option<(&[usize], bool)>,
) -> Result<String> {
    let set: SampleSet = sample.to_sample_set(MetricWeights::unit())?;
    let raw: Vec<[f64; 2]> = match set.points() {
        SamplePoints::Plane(v) => v.clone(),
        SamplePoints::Sphere(v) => v.iter().map(|p| [p.coords()[0], p.coords()[1]]).collect(),
        SamplePoints::Se2(v) => v.iter().map(|m| [m.u, m.v]).collect(),
        SamplePoints::Se3(v) => v.iter().map(|g| [g.d[0], g.d[1]]).collect(),
        SamplePoints::ScaledSe2(v) => v.iter().map(|m| m.d).collect(),
    };
    let path = match order {
        Some((ord, closed)) => {
            let mut p: Vec<[f64; 2]> = ord.iter().map(|&i| raw[i]).collect();
            if closed {
                if let Some(first) = p.first().copied() {
                    p.push(first);
                }
            }
            p
        }
        None => raw,
    };
    Ok(svg_document(&Projected {
        path,
        glyphs: Vec::new(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::CurveSampleJson;

    #[test]
    fn empty_curve_is_a_valid_empty_document() {
        let curve = CurveFile {
            manifold: "se2".into(),
            scheme: "geodesic".into(),
            samples: vec![],
        };
        let svg = render_curve(&curve, 4);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn se3_curve_gets_expected_glyph_count() {
        let samples: Vec<CurveSampleJson> = (0..32)
            .map(|i| CurveSampleJson {
                t: i as f64 / 31.0,
                theta: None,
                rotation: Some([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
                translation: vec![i as f64, (i * i) as f64 / 32.0, 0.0],
            })
            .collect();
        let curve = CurveFile {
            manifold: "se3".into(),
            scheme: "geodesic".into(),
            samples,
        };
        let svg = render_curve(&curve, 4);
        assert_eq!(svg.matches("<line").count(), 8);
        assert_eq!(svg.matches("<path").count(), 1);
    }

    #[test]
    fn closed_order_renders_closed_polyline() {
        let sample = SampleFile {
            manifold: "plane".into(),
            params: Default::default(),
            points: serde_json::json!([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]),
            velocities: None,
        };
        let svg = render_samples(&sample, Some((&[0, 1, 2], true))).unwrap();
        // 3 points + closing repeat = 4 path commands
        assert_eq!(svg.matches('L').count(), 3);
    }
}
