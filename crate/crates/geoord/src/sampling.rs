//! Unordered sample sets over the supported manifolds, plus the dense-sample
//! validity checks: the curvature bound, the combined feature-size /
//! injectivity-radius bound, uniform-sample gap reports and the
//! tubular-disk flatness witness.

use crate::error::{Error, Result};
use crate::lie::{
    dist_scaled_se2, dist_se2, dist_se3, geodesic_se3, wrap_angle, MetricWeights, PlanarMotion,
    RigidMotion3, ScaledPlanarMotion,
};
use crate::linalg::Vec2;
use crate::manifold::{slerp, sphere_dist, SpherePoint};
use serde::{Deserialize, Serialize};

/// Which manifold a sample set lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ManifoldKind {
    Plane,
    Sphere,
    Se2,
    Se3,
    ScaledSe2,
}

impl ManifoldKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ManifoldKind::Plane => "plane",
            ManifoldKind::Sphere => "s2",
            ManifoldKind::Se2 => "se2",
            ManifoldKind::Se3 => "se3",
            ManifoldKind::ScaledSe2 => "scaled_se2",
        }
    }
}

/// A single point on one of the supported manifolds.
#[derive(Clone, Debug)]
pub enum ManifoldPoint {
    Plane(Vec2),
    Sphere(SpherePoint),
    Se2(PlanarMotion),
    Se3(RigidMotion3),
    ScaledSe2(ScaledPlanarMotion),
}

impl ManifoldPoint {
    pub fn kind(&self) -> ManifoldKind {
        match self {
            ManifoldPoint::Plane(_) => ManifoldKind::Plane,
            ManifoldPoint::Sphere(_) => ManifoldKind::Sphere,
            ManifoldPoint::Se2(_) => ManifoldKind::Se2,
            ManifoldPoint::Se3(_) => ManifoldKind::Se3,
            ManifoldPoint::ScaledSe2(_) => ManifoldKind::ScaledSe2,
        }
    }
}

/// Distance between two points of the same manifold under the given weights.
pub fn point_distance(a: &ManifoldPoint, b: &ManifoldPoint, w: &MetricWeights) -> Result<f64> {
    match (a, b) {
        (ManifoldPoint::Plane(p), ManifoldPoint::Plane(q)) => {
            Ok(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
        }
        (ManifoldPoint::Sphere(p), ManifoldPoint::Sphere(q)) => sphere_dist(p, q),
        (ManifoldPoint::Se2(p), ManifoldPoint::Se2(q)) => Ok(dist_se2(p, q, w)),
        (ManifoldPoint::Se3(p), ManifoldPoint::Se3(q)) => dist_se3(p, q, w),
        (ManifoldPoint::ScaledSe2(p), ManifoldPoint::ScaledSe2(q)) => {
            Ok(dist_scaled_se2(p, q, w))
        }
        _ => Err(Error::ManifoldMismatch {
            expected: a.kind().as_str(),
            got: b.kind().as_str(),
        }),
    }
}

/// Geodesic midpoint of two points of the same manifold.
pub fn geodesic_midpoint(
    a: &ManifoldPoint,
    b: &ManifoldPoint,
    _w: &MetricWeights,
) -> Result<ManifoldPoint> {
    match (a, b) {
        (ManifoldPoint::Plane(p), ManifoldPoint::Plane(q)) => Ok(ManifoldPoint::Plane([
            0.5 * (p[0] + q[0]),
            0.5 * (p[1] + q[1]),
        ])),
        (ManifoldPoint::Sphere(p), ManifoldPoint::Sphere(q)) => {
            Ok(ManifoldPoint::Sphere(slerp(p, q, 0.5)?))
        }
        (ManifoldPoint::Se2(p), ManifoldPoint::Se2(q)) => {
            let half = 0.5 * wrap_angle(q.theta() - p.theta());
            Ok(ManifoldPoint::Se2(PlanarMotion::new(
                p.theta() + half,
                0.5 * (p.u + q.u),
                0.5 * (p.v + q.v),
            )))
        }
        (ManifoldPoint::Se3(p), ManifoldPoint::Se3(q)) => {
            Ok(ManifoldPoint::Se3(geodesic_se3(p, q, 0.5)?))
        }
        (ManifoldPoint::ScaledSe2(p), ManifoldPoint::ScaledSe2(q)) => {
            let half = 0.5 * wrap_angle(q.theta() - p.theta());
            Ok(ManifoldPoint::ScaledSe2(ScaledPlanarMotion::new(
                0.5 * (p.lambda + q.lambda),
                p.theta() + half,
                [0.5 * (p.d[0] + q.d[0]), 0.5 * (p.d[1] + q.d[1])],
            )))
        }
        _ => Err(Error::ManifoldMismatch {
            expected: a.kind().as_str(),
            got: b.kind().as_str(),
        }),
    }
}

/// The points of a sample set, one vector per manifold.
#[derive(Clone, Debug)]
pub enum SamplePoints {
    Plane(Vec<Vec2>),
    Sphere(Vec<SpherePoint>),
    Se2(Vec<PlanarMotion>),
    Se3(Vec<RigidMotion3>),
    ScaledSe2(Vec<ScaledPlanarMotion>),
}

impl SamplePoints {
    pub fn len(&self) -> usize {
        match self {
            SamplePoints::Plane(v) => v.len(),
            SamplePoints::Sphere(v) => v.len(),
            SamplePoints::Se2(v) => v.len(),
            SamplePoints::Se3(v) => v.len(),
            SamplePoints::ScaledSe2(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ManifoldKind {
        match self {
            SamplePoints::Plane(_) => ManifoldKind::Plane,
            SamplePoints::Sphere(_) => ManifoldKind::Sphere,
            SamplePoints::Se2(_) => ManifoldKind::Se2,
            SamplePoints::Se3(_) => ManifoldKind::Se3,
            SamplePoints::ScaledSe2(_) => ManifoldKind::ScaledSe2,
        }
    }
}

/// Unordered points on one manifold together with the metric weights.
#[derive(Clone, Debug)]
pub struct SampleSet {
    points: SamplePoints,
    weights: MetricWeights,
}

const DUPLICATE_TOL: f64 = 1e-12;

impl SampleSet {
    /// Build a sample set; rejects duplicate points and (for spheres)
    /// mismatched radii.
    pub fn new(points: SamplePoints, weights: MetricWeights) -> Result<Self> {
        if let SamplePoints::Sphere(v) = &points {
            if let Some(first) = v.first() {
                for p in v.iter() {
                    if (p.radius() - first.radius()).abs() > 1e-9 {
                        return Err(Error::RadiusMismatch {
                            a: first.radius(),
                            b: p.radius(),
                        });
                    }
                }
            }
        }
        let set = SampleSet { points, weights };
        let n = set.len();
        for i in 0..n {
            for j in i + 1..n {
                if set.distance(i, j)? <= DUPLICATE_TOL {
                    return Err(Error::DuplicatePoints { i, j });
                }
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> ManifoldKind {
        self.points.kind()
    }

    pub fn weights(&self) -> &MetricWeights {
        &self.weights
    }

    pub fn points(&self) -> &SamplePoints {
        &self.points
    }

    pub fn point(&self, i: usize) -> ManifoldPoint {
        match &self.points {
            SamplePoints::Plane(v) => ManifoldPoint::Plane(v[i]),
            SamplePoints::Sphere(v) => ManifoldPoint::Sphere(v[i]),
            SamplePoints::Se2(v) => ManifoldPoint::Se2(v[i]),
            SamplePoints::Se3(v) => ManifoldPoint::Se3(v[i]),
            SamplePoints::ScaledSe2(v) => ManifoldPoint::ScaledSe2(v[i]),
        }
    }

    /// Metric distance between samples `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                len: n,
            });
        }
        point_distance(&self.point(i), &self.point(j), &self.weights)
    }
}

/// Report produced by [`check_uniform_sample`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityReport {
    pub epsilon_used: f64,
    pub epsilon_bound: f64,
    pub is_dense: bool,
    /// Largest distance between order-consecutive samples.
    pub worst_gap: f64,
    /// Consecutive pairs whose gap exceeds epsilon_used.
    pub violating_pairs: Vec<(usize, usize)>,
}

/// Tubular-neighbourhood radius bound for plane curves: any radius must stay
/// strictly below 1/k_max.
pub fn curvature_bound_plane(k_max: f64) -> f64 {
    assert!(k_max > 0.0, "curvature bound needs k_max > 0");
    1.0 / k_max
}

/// The sampling bound: epsilon must stay below both the infimum of the local
/// feature size and the injectivity radius of the manifold.
pub fn epsilon_bound(feature_size_inf: f64, injectivity_radius: f64) -> f64 {
    assert!(
        feature_size_inf > 0.0 && injectivity_radius > 0.0,
        "bounds must be positive"
    );
    feature_size_inf.min(injectivity_radius)
}

/// Check whether the sample, visited in `order`, is a uniform
/// `epsilon`-sample, and whether `epsilon` clears `bound`. Gaps are measured
/// cyclically when `closed` is set.
pub fn check_uniform_sample(
    s: &SampleSet,
    order: &[usize],
    closed: bool,
    epsilon: f64,
    bound: f64,
) -> Result<DensityReport> {
    if s.len() < 2 {
        return Err(Error::EmptySample {
            needed: 2,
            got: s.len(),
        });
    }
    let n = order.len();
    let pairs = if closed { n } else { n - 1 };
    let mut worst_gap = 0.0f64;
    let mut violating = Vec::new();
    for k in 0..pairs {
        let i = order[k];
        let j = order[(k + 1) % n];
        let d = s.distance(i, j)?;
        worst_gap = worst_gap.max(d);
        if d > epsilon {
            violating.push((i, j));
        }
    }
    Ok(DensityReport {
        epsilon_used: epsilon,
        epsilon_bound: bound,
        is_dense: worst_gap <= epsilon && epsilon < bound,
        worst_gap,
        violating_pairs: violating,
    })
}

/// Flatness witness for one ordered pair: every point of the (true-curve)
/// arc between samples `p_idx` and `q_idx` must stay within d(p,q)/2 of the
/// geodesic midpoint of p and q.
pub fn flatness_witness(
    s: &SampleSet,
    p_idx: usize,
    q_idx: usize,
    arc: &SampleSet,
) -> Result<bool> {
    let p = s.point(p_idx);
    let q = s.point(q_idx);
    let radius = 0.5 * point_distance(&p, &q, s.weights())?;
    let center = geodesic_midpoint(&p, &q, s.weights())?;
    for k in 0..arc.len() {
        let d = point_distance(&center, &arc.point(k), s.weights())?;
        if d > radius + 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}
