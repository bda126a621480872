//! Deterministic demo curves with registered sampling bounds, used by the
//! CLI and the test harnesses.
//!
//! Each curve comes with a feature-size bound: analytic where the medial
//! axis is known (ellipse, great circle), otherwise a conservative numeric
//! proxy built from a dense resample - half the minimum distance between
//! well-separated parameter pairs, capped by the smallest Menger circumradius
//! of consecutive triples, with a 0.9 safety factor.

use crate::error::{Error, Result};
use crate::lie::{exp_so3, AngularVector, MetricWeights, PlanarMotion, RigidMotion3, ScaledPlanarMotion};
use crate::manifold::SpherePoint;
use crate::reconstruct::{Algorithm, OrderedPath};
use crate::sampling::{point_distance, ManifoldPoint, SamplePoints, SampleSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub const DEMO_NAMES: [&str; 6] = [
    "sphere-wave",
    "sphere-loop",
    "se2-circle",
    "se3-trajectory",
    "scaled-se2-spiral",
    "plane-ellipse",
];

/// Companion data written with a generated demo sample.
#[derive(Clone, Debug)]
pub struct DemoMeta {
    pub curve: String,
    pub closed: bool,
    /// Worst consecutive gap of the generated sample.
    pub epsilon: f64,
    pub feature_size: f64,
    pub injectivity_radius: f64,
}

fn unknown(name: &str) -> Error {
    Error::InvalidInput(format!(
        "unknown demo curve {name}; expected one of {DEMO_NAMES:?}"
    ))
}

pub fn is_closed(name: &str) -> Result<bool> {
    match name {
        "sphere-wave" | "sphere-loop" | "se2-circle" | "se3-trajectory" | "plane-ellipse" => {
            Ok(true)
        }
        "scaled-se2-spiral" => Ok(false),
        other => Err(unknown(other)),
    }
}

/// The analytic curve map, t in [0, 1].
pub fn curve_point(name: &str, t: f64) -> Result<ManifoldPoint> {
    let p = match name {
        "plane-ellipse" => {
            let a = TAU * t;
            ManifoldPoint::Plane([2.0 * a.cos(), a.sin()])
        }
        "sphere-loop" => {
            // the equator of the unit sphere
            let a = TAU * t;
            ManifoldPoint::Sphere(SpherePoint::new([a.cos(), a.sin(), 0.0], 1.0)?)
        }
        "sphere-wave" => {
            let psi = TAU * t;
            let phi = 0.35 * (3.0 * psi).sin();
            ManifoldPoint::Sphere(SpherePoint::new(
                [
                    phi.cos() * psi.cos(),
                    phi.cos() * psi.sin(),
                    phi.sin(),
                ],
                1.0,
            )?)
        }
        "se2-circle" => {
            let a = TAU * t;
            ManifoldPoint::Se2(PlanarMotion::new(a, a.cos(), a.sin()))
        }
        "se3-trajectory" => {
            // the rotation axis precesses inside a ball of radius 0.9, so no
            // pair of poses comes near the antipodal set
            let a = TAU * t;
            let w = AngularVector([0.9 * a.sin(), 0.9 * a.cos(), 0.0]);
            let d = [a.cos(), a.sin(), 0.3 * (2.0 * a).sin()];
            ManifoldPoint::Se3(RigidMotion3::new(exp_so3(&w), d))
        }
        "scaled-se2-spiral" => {
            let lambda = 0.5 * t;
            let theta = 1.5 * PI * t;
            let r = 1.5 * lambda.exp();
            ManifoldPoint::ScaledSe2(ScaledPlanarMotion::new(
                lambda,
                theta,
                [r * theta.cos(), r * theta.sin()],
            ))
        }
        other => return Err(unknown(other)),
    };
    Ok(p)
}

fn injectivity(name: &str, weights: &MetricWeights) -> Result<f64> {
    match name {
        "plane-ellipse" => Ok(f64::MAX),
        "sphere-loop" | "sphere-wave" => Ok(PI),
        // product metric: the rotation factor leaves its principal branch at
        // angle pi, i.e. metric distance pi * sqrt(alpha)
        "se2-circle" | "se3-trajectory" | "scaled-se2-spiral" => {
            Ok(PI * weights.alpha().sqrt())
        }
        other => Err(unknown(other)),
    }
}

/// Conservative numeric feature-size proxy from a dense resample.
fn numeric_feature_bound(name: &str, weights: &MetricWeights) -> Result<f64> {
    const M: usize = 512;
    let closed = is_closed(name)?;
    let denom = if closed { M as f64 } else { (M - 1) as f64 };
    let pts: Vec<ManifoldPoint> = (0..M)
        .map(|i| curve_point(name, i as f64 / denom))
        .collect::<Result<_>>()?;

    let gap = |i: usize, j: usize| -> usize {
        let raw = i.abs_diff(j);
        if closed {
            raw.min(M - raw)
        } else {
            raw
        }
    };

    // bottleneck term: half the closest approach between separated pairs
    let mut bottleneck = f64::MAX;
    for i in 0..M {
        for j in i + 1..M {
            if gap(i, j) < M / 8 {
                continue;
            }
            if let Ok(d) = point_distance(&pts[i], &pts[j], weights) {
                bottleneck = bottleneck.min(0.5 * d);
            }
        }
    }

    // curvature term: Menger circumradius of strided consecutive triples
    let stride = 2usize;
    let mut radius = f64::MAX;
    let last = if closed { M } else { M - 2 * stride };
    for i in 0..last {
        let (ia, ib, ic) = if closed {
            (i, (i + stride) % M, (i + 2 * stride) % M)
        } else {
            (i, i + stride, i + 2 * stride)
        };
        let (d1, d2, d3) = (
            point_distance(&pts[ia], &pts[ib], weights),
            point_distance(&pts[ib], &pts[ic], weights),
            point_distance(&pts[ia], &pts[ic], weights),
        );
        if let (Ok(d1), Ok(d2), Ok(d3)) = (d1, d2, d3) {
            let s = 0.5 * (d1 + d2 + d3);
            let area2 = s * (s - d1) * (s - d2) * (s - d3);
            if area2 > 1e-24 {
                radius = radius.min(d1 * d2 * d3 / (4.0 * area2.sqrt()));
            }
        }
    }

    Ok(0.9 * bottleneck.min(radius))
}

/// Registered feature-size infimum and injectivity radius of a demo curve.
pub fn registered_bound(name: &str, weights: &MetricWeights) -> Result<(f64, f64)> {
    let feature = match name {
        // min curvature radius of the 2x1 ellipse, at the major-axis ends
        "plane-ellipse" => 0.5,
        // great circle: the poles are the medial axis, a quarter turn away
        "sphere-loop" => FRAC_PI_2,
        "sphere-wave" | "se2-circle" | "se3-trajectory" | "scaled-se2-spiral" => {
            numeric_feature_bound(name, weights)?
        }
        other => return Err(unknown(other)),
    };
    Ok((feature, injectivity(name, weights)?))
}

/// Generate a shuffled demo sample plus the ground-truth visiting order.
/// Identical inputs produce identical outputs.
pub fn generate(
    name: &str,
    n: usize,
    seed: u64,
    weights: MetricWeights,
) -> Result<(SampleSet, OrderedPath, DemoMeta)> {
    let closed = is_closed(name)?;
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "demo curves need at least 4 samples, got {n}"
        )));
    }
    let denom = if closed { n as f64 } else { (n - 1) as f64 };
    let curve_points: Vec<ManifoldPoint> = (0..n)
        .map(|k| curve_point(name, k as f64 / denom))
        .collect::<Result<_>>()?;

    let mut src: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    src.shuffle(&mut rng);
    // truth.order[k] = where the k-th curve point landed in the shuffle
    let mut truth = vec![0usize; n];
    for (pos, &k) in src.iter().enumerate() {
        truth[k] = pos;
    }

    let shuffled: Vec<ManifoldPoint> = src.iter().map(|&k| curve_points[k].clone()).collect();
    let points = collect_points(name, shuffled)?;
    let set = SampleSet::new(points, weights)?;

    let pairs = if closed { n } else { n - 1 };
    let mut worst = 0.0f64;
    for k in 0..pairs {
        let d = set.distance(truth[k], truth[(k + 1) % n])?;
        worst = worst.max(d);
    }

    let (feature, inj) = registered_bound(name, &weights)?;
    let path = OrderedPath {
        order: truth,
        closed,
        algorithm: Algorithm::Mst,
        max_degree: 2,
    };
    let meta = DemoMeta {
        curve: name.to_string(),
        closed,
        epsilon: worst,
        feature_size: feature,
        injectivity_radius: inj,
    };
    Ok((set, path, meta))
}

fn collect_points(name: &str, pts: Vec<ManifoldPoint>) -> Result<SamplePoints> {
    match name {
        "plane-ellipse" => Ok(SamplePoints::Plane(
            pts.into_iter()
                .map(|p| match p {
                    ManifoldPoint::Plane(q) => q,
                    _ => unreachable!(),
                })
                .collect(),
        )),
        "sphere-loop" | "sphere-wave" => Ok(SamplePoints::Sphere(
            pts.into_iter()
                .map(|p| match p {
                    ManifoldPoint::Sphere(q) => q,
                    _ => unreachable!(),
                })
                .collect(),
        )),
        "se2-circle" => Ok(SamplePoints::Se2(
            pts.into_iter()
                .map(|p| match p {
                    ManifoldPoint::Se2(q) => q,
                    _ => unreachable!(),
                })
                .collect(),
        )),
        "se3-trajectory" => Ok(SamplePoints::Se3(
            pts.into_iter()
                .map(|p| match p {
                    ManifoldPoint::Se3(q) => q,
                    _ => unreachable!(),
                })
                .collect(),
        )),
        "scaled-se2-spiral" => Ok(SamplePoints::ScaledSe2(
            pts.into_iter()
                .map(|p| match p {
                    ManifoldPoint::ScaledSe2(q) => q,
                    _ => unreachable!(),
                })
                .collect(),
        )),
        other => Err(unknown(other)),
    }
}
