//! Ordering motion frames of a jumbled video sequence.
//!
//! Frames either carry oracle SE(2) poses (theta, u, v) or an axis-aligned
//! rectangle mask of the tracked object. In the mask pipeline the
//! translation comes from the centroid difference and the rotation from the
//! overlap area of the two rectangles registered at a common centroid: two
//! width-a strips crossing at angle theta overlap in a parallelogram of
//! area a^2/sin(theta), so the area pins |theta| on [0, pi/2]. The area
//! itself is computed by exact convex clipping, with the pixel-counting
//! estimator kept alongside.

use crate::error::{Error, Result};
use crate::lie::{MetricWeights, PlanarMotion};
use crate::linalg::Vec2;
use crate::reconstruct::{
    build_graph, close_loop, extract_path, mst, order_nn_graph, order_nncrust_r3, Algorithm,
    OrderedPath, WeightedCompleteGraph,
};
use crate::sampling::{SamplePoints, SampleSet};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Rectangle mask: side lengths (a is the shorter one) and the four corner
/// coordinates in pixels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RectMask {
    pub a: f64,
    pub b: f64,
    pub corners: [[f64; 2]; 4],
}

impl RectMask {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0 && self.a <= self.b) {
            return Err(Error::InvalidInput(format!(
                "mask sides must satisfy 0 < a <= b, got a={}, b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    pub fn centroid(&self) -> Vec2 {
        let mut c = [0.0, 0.0];
        for p in &self.corners {
            c[0] += p[0];
            c[1] += p[1];
        }
        [c[0] / 4.0, c[1] / 4.0]
    }
}

/// One video frame: an id plus a pose, a mask, or both.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pose: Option<PlanarMotion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mask: Option<RectMask>,
}

impl FrameRecord {
    pub fn validate(&self) -> Result<()> {
        if self.pose.is_none() && self.mask.is_none() {
            return Err(Error::InvalidInput(format!(
                "frame {} has neither pose nor mask",
                self.id
            )));
        }
        if let Some(mask) = &self.mask {
            mask.validate()?;
        }
        Ok(())
    }
}

/// Result of ordering a frame list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderingResult {
    pub order: Vec<String>,
    pub closed: bool,
    pub algorithm: Algorithm,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise_report: Option<Vec<Vec<f64>>>,
}

/// Signed area of a simple polygon (shoelace).
fn signed_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * s
}

/// Absolute polygon area.
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    signed_area(poly).abs()
}

/// Sutherland-Hodgman: clip `subject` against one half-plane, keeping the
/// left side of the directed edge a -> b.
fn clip_halfplane(subject: &[[f64; 2]], a: [f64; 2], b: [f64; 2]) -> Vec<[f64; 2]> {
    let side = |p: [f64; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    let n = subject.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = subject[i];
        let e = subject[(i + 1) % n];
        let sc = side(s);
        let ec = side(e);
        let cross = |out: &mut Vec<[f64; 2]>| {
            let denom = sc - ec;
            if denom.abs() > 1e-30 {
                let t = sc / denom;
                out.push([s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]);
            }
        };
        match (sc >= 0.0, ec >= 0.0) {
            (true, true) => out.push(e),
            (true, false) => cross(&mut out),
            (false, true) => {
                cross(&mut out);
                out.push(e);
            }
            (false, false) => {}
        }
    }
    out
}

/// Intersection of two convex polygons; `clip` must be counterclockwise.
pub fn convex_clip(subject: &[[f64; 2]], clip: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut poly = subject.to_vec();
    for i in 0..clip.len() {
        if poly.is_empty() {
            break;
        }
        poly = clip_halfplane(&poly, clip[i], clip[(i + 1) % clip.len()]);
    }
    poly
}

/// Corners of an a-by-b rectangle centred at `c`, long side along x before
/// rotating by `theta`; counterclockwise.
fn rect_corners(a: f64, b: f64, theta: f64, c: Vec2) -> [[f64; 2]; 4] {
    let (sin, cos) = theta.sin_cos();
    let rot = |x: f64, y: f64| [c[0] + cos * x - sin * y, c[1] + sin * x + cos * y];
    [
        rot(-b / 2.0, -a / 2.0),
        rot(b / 2.0, -a / 2.0),
        rot(b / 2.0, a / 2.0),
        rot(-b / 2.0, a / 2.0),
    ]
}

/// Exact intersection area of an a-by-b rectangle and its copy rotated by
/// `theta` about the common centroid. In the strip regime this equals
/// a^2/sin(theta).
pub fn overlap_area(a: f64, b: f64, theta: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0 && a <= b, "need 0 < a <= b");
    assert!(
        (-1e-12..=FRAC_PI_2 + 1e-12).contains(&theta),
        "theta must lie in [0, pi/2]"
    );
    let theta = theta.clamp(0.0, FRAC_PI_2);
    let base = rect_corners(a, b, 0.0, [0.0, 0.0]);
    let turned = rect_corners(a, b, theta, [0.0, 0.0]);
    polygon_area(&convex_clip(&base, &turned))
}

/// Difference of the two mask centroids (f2 minus f1).
pub fn estimate_translation(f1: &FrameRecord, f2: &FrameRecord) -> Result<Vec2> {
    let m1 = f1.mask.as_ref().ok_or_else(|| Error::MissingMask {
        id: f1.id.clone(),
    })?;
    let m2 = f2.mask.as_ref().ok_or_else(|| Error::MissingMask {
        id: f2.id.clone(),
    })?;
    let c1 = m1.centroid();
    let c2 = m2.centroid();
    Ok([c2[0] - c1[0], c2[1] - c1[1]])
}

/// Overlap area of the two masks registered at a common centroid, by exact
/// convex clipping.
pub fn measured_overlap(f1: &FrameRecord, f2: &FrameRecord) -> Result<f64> {
    let (p1, p2) = registered_corners(f1, f2)?;
    Ok(polygon_area(&convex_clip(&p1, &p2)))
}

/// Same, but with the pixel-counting estimator of the overlap region.
pub fn measured_overlap_lattice(f1: &FrameRecord, f2: &FrameRecord) -> Result<f64> {
    let (p1, p2) = registered_corners(f1, f2)?;
    let overlap = convex_clip(&p1, &p2);
    lattice_area(&overlap)
}

fn register_at_centroid(mask: &RectMask) -> Vec<[f64; 2]> {
    let c = mask.centroid();
    let mut out: Vec<[f64; 2]> = mask
        .corners
        .iter()
        .map(|p| [p[0] - c[0], p[1] - c[1]])
        .collect();
    if signed_area(&out) < 0.0 {
        out.reverse();
    }
    out
}

fn registered_corners(
    f1: &FrameRecord,
    f2: &FrameRecord,
) -> Result<(Vec<[f64; 2]>, Vec<[f64; 2]>)> {
    let m1 = f1.mask.as_ref().ok_or_else(|| Error::MissingMask {
        id: f1.id.clone(),
    })?;
    let m2 = f2.mask.as_ref().ok_or_else(|| Error::MissingMask {
        id: f2.id.clone(),
    })?;
    Ok((register_at_centroid(m1), register_at_centroid(m2)))
}

/// Invert the overlap-area curve: find theta in [0, pi/2] with
/// overlap_area(a, b, theta) = area_measured. The area is strictly
/// decreasing there, so bisection converges; the sign of the rotation is
/// unobservable from the area.
pub fn estimate_rotation(f1: &FrameRecord, _f2: &FrameRecord, area_measured: f64) -> Result<f64> {
    let m1 = f1.mask.as_ref().ok_or_else(|| Error::MissingMask {
        id: f1.id.clone(),
    })?;
    estimate_rotation_from_sides(m1.a, m1.b, area_measured)
}

/// Core of [`estimate_rotation`] for explicit side lengths.
pub fn estimate_rotation_from_sides(a: f64, b: f64, area_measured: f64) -> Result<f64> {
    let full = a * b;
    let min_area = overlap_area(a, b, FRAC_PI_2);
    let tol = 1e-9 * full;
    if area_measured > full + tol || area_measured < min_area - tol {
        return Err(Error::AreaOutOfRange {
            area: area_measured,
            min: min_area,
            max: full,
        });
    }
    let target = area_measured.clamp(min_area, full);
    let mut lo = 0.0f64;
    let mut hi = FRAC_PI_2;
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        let area = overlap_area(a, b, mid);
        if (area - target).abs() <= 1e-8 * full.max(1.0) && (hi - lo) < 1e-9 {
            return Ok(mid);
        }
        if area > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Pick-style lattice count for a simple polygon: interior points plus half
/// the boundary points, minus one. Within O(perimeter) of the exact area.
pub fn lattice_area(polygon: &[[f64; 2]]) -> Result<f64> {
    if polygon.len() < 3 || polygon_area(polygon) < 1e-12 {
        return Err(Error::DegeneratePolygon);
    }
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in polygon {
        min_x = min_x.min(p[0]);
        max_x = max_x.max(p[0]);
        min_y = min_y.min(p[1]);
        max_y = max_y.max(p[1]);
    }
    let mut interior = 0usize;
    let mut boundary = 0usize;
    let n = polygon.len();
    const EDGE_TOL: f64 = 1e-9;
    for ix in (min_x - 1.0).ceil() as i64..=(max_x + 1.0).floor() as i64 {
        for iy in (min_y - 1.0).ceil() as i64..=(max_y + 1.0).floor() as i64 {
            let p = [ix as f64, iy as f64];
            // boundary test: distance to any edge segment
            let mut on_edge = false;
            for i in 0..n {
                let a = polygon[i];
                let b = polygon[(i + 1) % n];
                let ab = [b[0] - a[0], b[1] - a[1]];
                let ap = [p[0] - a[0], p[1] - a[1]];
                let len2 = ab[0] * ab[0] + ab[1] * ab[1];
                let t = if len2 > 0.0 {
                    ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                let dx = ap[0] - t * ab[0];
                let dy = ap[1] - t * ab[1];
                if (dx * dx + dy * dy).sqrt() <= EDGE_TOL {
                    on_edge = true;
                    break;
                }
            }
            if on_edge {
                boundary += 1;
                continue;
            }
            // even-odd ray cast to the right
            let mut inside = false;
            for i in 0..n {
                let a = polygon[i];
                let b = polygon[(i + 1) % n];
                if (a[1] > p[1]) != (b[1] > p[1]) {
                    let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                    if p[0] < x {
                        inside = !inside;
                    }
                }
            }
            if inside {
                interior += 1;
            }
        }
    }
    Ok(interior as f64 + boundary as f64 / 2.0 - 1.0)
}

/// Pairwise distance of two frames through the mask pipeline:
/// sqrt(alpha theta_hat^2 + beta |c2 - c1|^2).
fn mask_distance(f1: &FrameRecord, f2: &FrameRecord, w: &MetricWeights) -> Result<f64> {
    let shift = estimate_translation(f1, f2)?;
    let area = measured_overlap(f1, f2)?;
    let theta = estimate_rotation(f1, f2, area)?;
    Ok((w.alpha() * theta * theta + w.beta() * (shift[0] * shift[0] + shift[1] * shift[1]))
        .sqrt())
}

/// Orientation-independent canonical form over frame ids, so any shuffle of
/// the input list maps to the same result.
fn canonicalize_ids(order: &mut [String], closed: bool) {
    let n = order.len();
    if n < 2 {
        return;
    }
    if closed {
        let min_pos = (0..n).min_by(|&i, &j| order[i].cmp(&order[j])).unwrap();
        order.rotate_left(min_pos);
        if n > 2 && order[n - 1] < order[1] {
            order[1..].reverse();
        }
    } else if order[n - 1] < order[0] {
        order.reverse();
    }
}

/// Order a list of frames. Oracle poses are used when every frame has one;
/// otherwise distances come from the mask estimators, which needs masks on
/// every frame and relative rotations below pi/2.
pub fn order_frames(
    frames: &[FrameRecord],
    w: &MetricWeights,
    algorithm: Algorithm,
    start: Option<&str>,
    slack: f64,
) -> Result<OrderingResult> {
    if frames.len() < 2 {
        return Err(Error::EmptySample {
            needed: 2,
            got: frames.len(),
        });
    }
    for f in frames {
        f.validate()?;
    }
    let n = frames.len();
    let start_index = match (algorithm, start) {
        (Algorithm::Nn, None) => return Err(Error::StartRequired),
        (Algorithm::Nn, Some(id)) => Some(
            frames
                .iter()
                .position(|f| f.id == id)
                .ok_or_else(|| Error::InvalidInput(format!("unknown start frame {id}")))?,
        ),
        _ => None,
    };

    let all_posed = frames.iter().all(|f| f.pose.is_some());
    let path: OrderedPath = if all_posed {
        let poses: Vec<PlanarMotion> = frames.iter().map(|f| f.pose.unwrap()).collect();
        let s = SampleSet::new(SamplePoints::Se2(poses), *w)?;
        match algorithm {
            Algorithm::Mst => {
                let g = build_graph(&s)?;
                close_loop(extract_path(&mst(&g))?, &g, slack)
            }
            Algorithm::Nn => {
                let g = build_graph(&s)?;
                order_nn_graph(&g, start_index.unwrap())
            }
            Algorithm::NnCrust => order_nncrust_r3(&s, w)?,
        }
    } else {
        if algorithm == Algorithm::NnCrust {
            return Err(Error::InvalidInput(
                "nncrust needs oracle poses on every frame".into(),
            ));
        }
        let g = WeightedCompleteGraph::from_weights(n, |i, j| {
            mask_distance(&frames[i], &frames[j], w)
        })?;
        match algorithm {
            Algorithm::Mst => close_loop(extract_path(&mst(&g))?, &g, slack),
            Algorithm::Nn => order_nn_graph(&g, start_index.unwrap()),
            Algorithm::NnCrust => unreachable!(),
        }
    };

    let report: Vec<Vec<f64>> = if all_posed {
        let poses: Vec<PlanarMotion> = frames.iter().map(|f| f.pose.unwrap()).collect();
        let s = SampleSet::new(SamplePoints::Se2(poses), *w)?;
        (0..n)
            .map(|i| (0..n).map(|j| s.distance(i, j).unwrap_or(f64::NAN)).collect())
            .collect()
    } else {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0.0
                        } else {
                            mask_distance(&frames[i], &frames[j], w).unwrap_or(f64::NAN)
                        }
                    })
                    .collect()
            })
            .collect()
    };

    let mut order: Vec<String> = path.order.iter().map(|&i| frames[i].id.clone()).collect();
    // greedy chains keep their start; the others get the id-canonical form
    if algorithm != Algorithm::Nn {
        canonicalize_ids(&mut order, path.closed);
    }
    Ok(OrderingResult {
        order,
        closed: path.closed,
        algorithm,
        pairwise_report: Some(report),
    })
}
