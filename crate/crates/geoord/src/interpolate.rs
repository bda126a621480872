//! Upsampling an ordered sample into a smooth motion.
//!
//! Three schemes:
//! * `geodesic` - piecewise exp segments between consecutive samples (C0);
//! * `partial_geodesic` - rotations still exp-interpolated per segment, but
//!   translations run through one natural cubic spline over all nodes;
//! * `de_casteljau` - a cubic Bezier built from two frames with boundary
//!   velocities, evaluated by three nested levels of geodesic interpolation.
//!   The control frames are offset along the metric geodesics,
//!   b1 = g0 . exp(v0/3) and b2 = g1 . exp(-v1/3), which makes the endpoint
//!   body velocities exactly v0 and v1.

use crate::error::{Error, Result};
use crate::lie::{
    geodesic_se3, log_so3, wrap_angle, PlanarMotion, RigidMotion3, Twist,
};
use crate::reconstruct::OrderedPath;
use crate::sampling::{SamplePoints, SampleSet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Geodesic,
    PartialGeodesic,
    DeCasteljau,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Geodesic => "geodesic",
            Scheme::PartialGeodesic => "partial_geodesic",
            Scheme::DeCasteljau => "de_casteljau",
        }
    }
}

/// Samples of an interpolated motion, parameter strictly increasing from 0
/// to 1.
#[derive(Clone, Debug)]
pub enum CurveSamples {
    Se3(Vec<(f64, RigidMotion3)>),
    Se2(Vec<(f64, PlanarMotion)>),
}

impl CurveSamples {
    pub fn len(&self) -> usize {
        match self {
            CurveSamples::Se3(v) => v.len(),
            CurveSamples::Se2(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            CurveSamples::Se3(v) => v.iter().map(|(t, _)| *t).collect(),
            CurveSamples::Se2(v) => v.iter().map(|(t, _)| *t).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MotionCurve {
    pub scheme: Scheme,
    pub samples: CurveSamples,
}

/// Two frames with body-frame boundary velocities.
#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub g0: RigidMotion3,
    pub g1: RigidMotion3,
    pub v0: Twist,
    pub v1: Twist,
}

impl BoundaryData {
    /// Validates that the rotation geodesic between the frames is unique.
    pub fn new(g0: RigidMotion3, g1: RigidMotion3, v0: Twist, v1: Twist) -> Result<Self> {
        log_so3(&g0.r.relative_to(&g1.r))?;
        Ok(BoundaryData { g0, g1, v0, v1 })
    }
}

/// Natural cubic spline through (t_i, y_i) with zero second derivative at
/// both ends. Knots must be strictly increasing.
pub struct NaturalCubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl NaturalCubicSpline {
    pub fn fit(knots: &[f64], values: &[f64]) -> Result<Self> {
        let n = knots.len();
        if n < 3 {
            return Err(Error::TooFewNodes { needed: 3, got: n });
        }
        assert_eq!(values.len(), n);
        // Tridiagonal system for the interior second derivatives
        // (Thomas algorithm); natural ends pin M_0 = M_{n-1} = 0.
        let m = n - 2;
        let mut diag = vec![0.0; m];
        let mut lower = vec![0.0; m];
        let mut upper = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        for i in 1..n - 1 {
            let h0 = knots[i] - knots[i - 1];
            let h1 = knots[i + 1] - knots[i];
            lower[i - 1] = h0 / 6.0;
            diag[i - 1] = (h0 + h1) / 3.0;
            upper[i - 1] = h1 / 6.0;
            rhs[i - 1] = (values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0;
        }
        for i in 1..m {
            let w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut second = vec![0.0; n];
        if m > 0 {
            second[n - 2] = rhs[m - 1] / diag[m - 1];
            for i in (1..m).rev() {
                second[i] = (rhs[i - 1] - upper[i - 1] * second[i + 1]) / diag[i - 1];
            }
        }
        Ok(NaturalCubicSpline {
            knots: knots.to_vec(),
            values: values.to_vec(),
            second,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.knots.len();
        let i = match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
            Ok(exact) => exact.min(n - 2),
            Err(ins) => ins.saturating_sub(1).min(n - 2),
        };
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let h = t1 - t0;
        let a = (t1 - t) / h;
        let b = (t - t0) / h;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0
    }

    #[cfg(test)]
    pub(crate) fn second_derivatives(&self) -> &[f64] {
        &self.second
    }
}

/// Segment interpolation for a planar motion: shortest angular path for
/// theta, linear translation.
fn se2_segment(a: &PlanarMotion, b: &PlanarMotion, s: f64) -> PlanarMotion {
    let dtheta = wrap_angle(b.theta() - a.theta());
    PlanarMotion::new(
        a.theta() + s * dtheta,
        a.u + s * (b.u - a.u),
        a.v + s * (b.v - a.v),
    )
}

fn ordered_se3(p: &OrderedPath, s: &SampleSet) -> Result<Vec<RigidMotion3>> {
    match s.points() {
        SamplePoints::Se3(v) => Ok(p.order.iter().map(|&i| v[i]).collect()),
        other => Err(Error::ManifoldMismatch {
            expected: "se3",
            got: other.kind().as_str(),
        }),
    }
}

fn ordered_se2(p: &OrderedPath, s: &SampleSet) -> Result<Vec<PlanarMotion>> {
    match s.points() {
        SamplePoints::Se2(v) => Ok(p.order.iter().map(|&i| v[i]).collect()),
        other => Err(Error::ManifoldMismatch {
            expected: "se2",
            got: other.kind().as_str(),
        }),
    }
}

/// Global parameter values: with n_seg segments and k subdivisions each,
/// sample i sits at i / (n_seg * k). Closed paths wrap back to node 0.
fn segment_params(n_nodes: usize, closed: bool, k: usize) -> (usize, Vec<f64>) {
    let n_seg = if closed { n_nodes } else { n_nodes - 1 };
    let total = n_seg * k + 1;
    let params: Vec<f64> = (0..total).map(|i| i as f64 / (n_seg * k) as f64).collect();
    (n_seg, params)
}

/// Piecewise geodesic through the ordered samples; k subdivisions per
/// segment, so k = 1 reproduces the samples themselves.
pub fn interpolate_geodesic(p: &OrderedPath, s: &SampleSet, k: usize) -> Result<MotionCurve> {
    assert!(k >= 1, "k must be at least 1");
    if p.order.len() < 2 {
        return Err(Error::TooFewNodes {
            needed: 2,
            got: p.order.len(),
        });
    }
    let n = p.order.len();
    let (n_seg, params) = segment_params(n, p.closed, k);
    let samples = match s.points() {
        SamplePoints::Se3(_) => {
            let nodes = ordered_se3(p, s)?;
            let mut out = Vec::with_capacity(params.len());
            for (idx, &t) in params.iter().enumerate() {
                let seg = (idx / k).min(n_seg - 1);
                let local = (idx - seg * k) as f64 / k as f64;
                let a = &nodes[seg];
                let b = &nodes[(seg + 1) % n];
                let g = if idx == params.len() - 1 {
                    nodes[if p.closed { 0 } else { n - 1 }]
                } else if local == 0.0 {
                    *a
                } else {
                    geodesic_se3(a, b, local)?
                };
                out.push((t, g));
            }
            CurveSamples::Se3(out)
        }
        SamplePoints::Se2(_) => {
            let nodes = ordered_se2(p, s)?;
            let mut out = Vec::with_capacity(params.len());
            for (idx, &t) in params.iter().enumerate() {
                let seg = (idx / k).min(n_seg - 1);
                let local = (idx - seg * k) as f64 / k as f64;
                let a = &nodes[seg];
                let b = &nodes[(seg + 1) % n];
                let g = if idx == params.len() - 1 {
                    nodes[if p.closed { 0 } else { n - 1 }]
                } else {
                    se2_segment(a, b, local)
                };
                out.push((t, g));
            }
            CurveSamples::Se2(out)
        }
        other => {
            return Err(Error::ManifoldMismatch {
                expected: "se3 or se2",
                got: other.kind().as_str(),
            })
        }
    };
    Ok(MotionCurve {
        scheme: Scheme::Geodesic,
        samples,
    })
}

/// Exp-interpolated rotations with spline translations. Needs at least
/// three nodes for the spline.
pub fn interpolate_partial_geodesic(
    p: &OrderedPath,
    s: &SampleSet,
    k: usize,
) -> Result<MotionCurve> {
    assert!(k >= 1, "k must be at least 1");
    if p.order.len() < 3 {
        return Err(Error::TooFewNodes {
            needed: 3,
            got: p.order.len(),
        });
    }
    let n = p.order.len();
    let (n_seg, params) = segment_params(n, p.closed, k);
    let knots: Vec<f64> = (0..=n_seg).map(|i| i as f64 / n_seg as f64).collect();

    let samples = match s.points() {
        SamplePoints::Se3(_) => {
            let nodes = ordered_se3(p, s)?;
            let component = |axis: usize| -> Vec<f64> {
                (0..=n_seg).map(|i| nodes[i % n].d[axis]).collect()
            };
            let splines = [
                NaturalCubicSpline::fit(&knots, &component(0))?,
                NaturalCubicSpline::fit(&knots, &component(1))?,
                NaturalCubicSpline::fit(&knots, &component(2))?,
            ];
            let mut out = Vec::with_capacity(params.len());
            for (idx, &t) in params.iter().enumerate() {
                let seg = (idx / k).min(n_seg - 1);
                let local = (idx - seg * k) as f64 / k as f64;
                let a = &nodes[seg];
                let b = &nodes[(seg + 1) % n];
                let g = if local == 0.0 {
                    *a
                } else if idx == params.len() - 1 {
                    *b
                } else {
                    let r = geodesic_se3(
                        &RigidMotion3::new(a.r, [0.0; 3]),
                        &RigidMotion3::new(b.r, [0.0; 3]),
                        local,
                    )?
                    .r;
                    RigidMotion3::new(
                        r,
                        [splines[0].eval(t), splines[1].eval(t), splines[2].eval(t)],
                    )
                };
                out.push((t, g));
            }
            CurveSamples::Se3(out)
        }
        SamplePoints::Se2(_) => {
            let nodes = ordered_se2(p, s)?;
            let component = |pick: fn(&PlanarMotion) -> f64| -> Vec<f64> {
                (0..=n_seg).map(|i| pick(&nodes[i % n])).collect()
            };
            let su = NaturalCubicSpline::fit(&knots, &component(|m| m.u))?;
            let sv = NaturalCubicSpline::fit(&knots, &component(|m| m.v))?;
            let mut out = Vec::with_capacity(params.len());
            for (idx, &t) in params.iter().enumerate() {
                let seg = (idx / k).min(n_seg - 1);
                let local = (idx - seg * k) as f64 / k as f64;
                let a = &nodes[seg];
                let b = &nodes[(seg + 1) % n];
                let pose = if local == 0.0 {
                    *a
                } else if idx == params.len() - 1 {
                    *b
                } else {
                    let with_theta = se2_segment(a, b, local);
                    PlanarMotion::new(with_theta.theta(), su.eval(t), sv.eval(t))
                };
                out.push((t, pose));
            }
            CurveSamples::Se2(out)
        }
        other => {
            return Err(Error::ManifoldMismatch {
                expected: "se3 or se2",
                got: other.kind().as_str(),
            })
        }
    };
    Ok(MotionCurve {
        scheme: Scheme::PartialGeodesic,
        samples,
    })
}

/// One de Casteljau evaluation at parameter `t`: three nested levels of
/// geodesic interpolation over the four control frames.
pub fn de_casteljau_eval(b: &BoundaryData, t: f64) -> Result<RigidMotion3> {
    let b0 = b.g0;
    let b1 = b.g0.metric_exp(&b.v0.scaled(1.0 / 3.0));
    let b2 = b.g1.metric_exp(&b.v1.scaled(-1.0 / 3.0));
    let b3 = b.g1;
    let c0 = geodesic_se3(&b0, &b1, t)?;
    let c1 = geodesic_se3(&b1, &b2, t)?;
    let c2 = geodesic_se3(&b2, &b3, t)?;
    let d0 = geodesic_se3(&c0, &c1, t)?;
    let d1 = geodesic_se3(&c1, &c2, t)?;
    geodesic_se3(&d0, &d1, t)
}

/// Cubic de Casteljau curve between two frames with boundary velocities,
/// sampled at k >= 2 uniform parameters.
pub fn interpolate_decasteljau(b: &BoundaryData, k: usize) -> Result<MotionCurve> {
    if k < 2 {
        return Err(Error::TooFewNodes { needed: 2, got: k });
    }
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let t = j as f64 / (k - 1) as f64;
        let g = if j == 0 {
            b.g0
        } else if j == k - 1 {
            b.g1
        } else {
            de_casteljau_eval(b, t)?
        };
        out.push((t, g));
    }
    Ok(MotionCurve {
        scheme: Scheme::DeCasteljau,
        samples: CurveSamples::Se3(out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{
        exp_se3, exp_so3, log_se3, so3_angle_between, AngularVector, MetricWeights,
        RotationMatrix,
    };
    use crate::reconstruct::Algorithm;

    fn path(n: usize, closed: bool) -> OrderedPath {
        OrderedPath {
            order: (0..n).collect(),
            closed,
            algorithm: Algorithm::Mst,
            max_degree: 2,
        }
    }

    fn se3_set(motions: Vec<RigidMotion3>) -> SampleSet {
        SampleSet::new(SamplePoints::Se3(motions), MetricWeights::unit()).unwrap()
    }

    fn assert_motion_close(a: &RigidMotion3, b: &RigidMotion3, tol: f64) {
        assert!(a.r.matrix().frob_dist(b.r.matrix()) <= tol);
        for i in 0..3 {
            assert!((a.d[i] - b.d[i]).abs() <= tol, "{:?} vs {:?}", a.d, b.d);
        }
    }

    #[test]
    fn geodesic_k1_returns_the_nodes() {
        let nodes = vec![
            exp_se3(&Twist::new([0.1, 0.0, 0.0], [0.0, 0.0, 0.0])),
            exp_se3(&Twist::new([0.0, 0.2, 0.0], [1.0, 0.0, 0.0])),
            exp_se3(&Twist::new([0.0, 0.0, 0.3], [2.0, 1.0, 0.0])),
        ];
        let s = se3_set(nodes.clone());
        let c = interpolate_geodesic(&path(3, false), &s, 1).unwrap();
        match c.samples {
            CurveSamples::Se3(v) => {
                assert_eq!(v.len(), 3);
                for (i, (_, g)) in v.iter().enumerate() {
                    assert_motion_close(g, &nodes[i], 0.0);
                }
            }
            _ => panic!("wrong manifold"),
        }
    }

    #[test]
    fn geodesic_translation_thirds() {
        let nodes = vec![
            RigidMotion3::identity(),
            RigidMotion3::new(RotationMatrix::identity(), [3.0, 0.0, 0.0]),
        ];
        let s = se3_set(nodes);
        let c = interpolate_geodesic(&path(2, false), &s, 3).unwrap();
        match c.samples {
            CurveSamples::Se3(v) => {
                let xs: Vec<f64> = v.iter().map(|(_, g)| g.d[0]).collect();
                for (got, want) in xs.iter().zip([0.0, 1.0, 2.0, 3.0]) {
                    assert!((got - want).abs() < 1e-12);
                }
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rotation_norm_additivity_per_segment() {
        let nodes = vec![
            exp_se3(&Twist::new([0.4, -0.1, 0.2], [0.0; 3])),
            exp_se3(&Twist::new([-0.2, 0.5, 0.1], [1.0, 1.0, 1.0])),
        ];
        let s = se3_set(nodes.clone());
        let c = interpolate_geodesic(&path(2, false), &s, 8).unwrap();
        let w0 = so3_angle_between(&nodes[0].r, &nodes[1].r).unwrap();
        if let CurveSamples::Se3(v) = c.samples {
            for pair in v.windows(2) {
                let (ta, ga) = &pair[0];
                let (tb, gb) = &pair[1];
                let phi = so3_angle_between(&ga.r, &gb.r).unwrap();
                assert!((phi - (tb - ta) * w0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn partial_geodesic_constant_rotation_stays_constant() {
        let r = exp_so3(&AngularVector([0.3, 0.1, -0.2]));
        let nodes: Vec<RigidMotion3> = (0..4)
            .map(|i| RigidMotion3::new(r, [i as f64, (i * i) as f64, 0.0]))
            .collect();
        let s = se3_set(nodes);
        let c = interpolate_partial_geodesic(&path(4, false), &s, 5).unwrap();
        if let CurveSamples::Se3(v) = c.samples {
            for (_, g) in &v {
                assert!(g.r.matrix().frob_dist(r.matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn partial_geodesic_linear_data_reduces_to_line() {
        // natural spline is exact on linear data
        let nodes: Vec<RigidMotion3> = (0..5)
            .map(|i| {
                RigidMotion3::new(
                    RotationMatrix::identity(),
                    [2.0 * i as f64, -(i as f64), 0.5 * i as f64],
                )
            })
            .collect();
        let s = se3_set(nodes);
        let c = interpolate_partial_geodesic(&path(5, false), &s, 4).unwrap();
        if let CurveSamples::Se3(v) = c.samples {
            for (t, g) in &v {
                let x = 8.0 * t;
                assert!((g.d[0] - x).abs() < 1e-10);
                assert!((g.d[1] + x / 2.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn partial_geodesic_interpolates_nodes() {
        let nodes: Vec<RigidMotion3> = (0..5)
            .map(|i| {
                exp_se3(&Twist::new(
                    [0.1 * i as f64, 0.05 * i as f64, 0.0],
                    [i as f64, (i as f64).sin(), 0.3 * i as f64],
                ))
            })
            .collect();
        let s = se3_set(nodes.clone());
        let c = interpolate_partial_geodesic(&path(5, false), &s, 4).unwrap();
        if let CurveSamples::Se3(v) = c.samples {
            for (i, node) in nodes.iter().enumerate() {
                let (_, g) = &v[i * 4];
                assert_motion_close(g, node, 1e-9);
            }
        }
    }

    #[test]
    fn partial_geodesic_needs_three_nodes() {
        let nodes = vec![
            RigidMotion3::identity(),
            RigidMotion3::new(RotationMatrix::identity(), [1.0, 0.0, 0.0]),
        ];
        let s = se3_set(nodes);
        assert!(matches!(
            interpolate_partial_geodesic(&path(2, false), &s, 2),
            Err(Error::TooFewNodes { .. })
        ));
    }

    #[test]
    fn spline_matches_dense_linear_system_oracle() {
        // Solve the same natural-spline equations with a dense Gaussian
        // elimination and compare second derivatives.
        let knots: Vec<f64> = vec![0.0, 0.1, 0.35, 0.5, 0.8, 1.0];
        let values: Vec<f64> = vec![1.0, -0.5, 2.0, 0.3, 0.9, -1.2];
        let spline = NaturalCubicSpline::fit(&knots, &values).unwrap();

        let n = knots.len();
        let m = n - 2;
        let mut a = vec![vec![0.0; m]; m];
        let mut rhs = vec![0.0; m];
        for i in 1..n - 1 {
            let h0 = knots[i] - knots[i - 1];
            let h1 = knots[i + 1] - knots[i];
            if i - 1 > 0 {
                a[i - 1][i - 2] = h0 / 6.0;
            }
            a[i - 1][i - 1] = (h0 + h1) / 3.0;
            if i - 1 < m - 1 {
                a[i - 1][i] = h1 / 6.0;
            }
            rhs[i - 1] = (values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0;
        }
        for col in 0..m {
            let piv = (col..m)
                .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap())
                .unwrap();
            a.swap(col, piv);
            rhs.swap(col, piv);
            for row in col + 1..m {
                let f = a[row][col] / a[col][col];
                for c2 in col..m {
                    a[row][c2] -= f * a[col][c2];
                }
                rhs[row] -= f * rhs[col];
            }
        }
        let mut x = vec![0.0; m];
        for row in (0..m).rev() {
            let mut sum = rhs[row];
            for c2 in row + 1..m {
                sum -= a[row][c2] * x[c2];
            }
            x[row] = sum / a[row][row];
        }
        for i in 0..m {
            assert!((spline.second_derivatives()[i + 1] - x[i]).abs() < 1e-12);
        }
        for (t, y) in knots.iter().zip(values.iter()) {
            assert!((spline.eval(*t) - y).abs() < 1e-12);
        }
    }

    #[test]
    fn decasteljau_degenerate_velocities_collapse_to_geodesic() {
        // boundary velocities equal to the geodesic's own endpoint body
        // twists put all four control frames on one geodesic
        let g0 = exp_se3(&Twist::new([0.2, 0.0, 0.1], [0.0, 1.0, 0.0]));
        let g1 = exp_se3(&Twist::new([-0.3, 0.4, 0.0], [2.0, 0.0, 1.0]));
        let (v0, v1) = crate::lie::geodesic_boundary_twists(&g0, &g1).unwrap();
        let b = BoundaryData::new(g0, g1, v0, v1).unwrap();
        let c = interpolate_decasteljau(&b, 9).unwrap();
        if let CurveSamples::Se3(samples) = c.samples {
            for (t, g) in &samples {
                let expected = geodesic_se3(&g0, &g1, *t).unwrap();
                assert_motion_close(g, &expected, 1e-9);
            }
        }
    }

    #[test]
    fn decasteljau_endpoints_and_velocities() {
        let g0 = RigidMotion3::new(
            exp_so3(&AngularVector([0.0, 0.0, 0.0])),
            [-5.0, 0.0, 0.0],
        );
        let g1 = RigidMotion3::new(
            exp_so3(&AngularVector([std::f64::consts::FRAC_PI_2, 0.0, 0.0])),
            [5.0, 0.0, 0.0],
        );
        let v0 = Twist::new([0.0, 0.0, 0.0], [3.0, 1.0, 1.0]);
        let v1 = Twist::new(
            [std::f64::consts::FRAC_PI_2, 0.0, 0.0],
            [-1.0, -3.0, -1.0],
        );
        let b = BoundaryData::new(g0, g1, v0, v1).unwrap();
        let c = interpolate_decasteljau(&b, 33).unwrap();
        if let CurveSamples::Se3(samples) = &c.samples {
            assert_motion_close(&samples[0].1, &g0, 0.0);
            assert_motion_close(&samples[32].1, &g1, 0.0);
        }

        // finite-difference body twists at the endpoints
        let h = 1e-6;
        let near0 = de_casteljau_eval(&b, h).unwrap();
        let t0 = log_se3(&g0.inverse().compose(&near0)).unwrap();
        for i in 0..3 {
            assert!((t0.w.0[i] / h - v0.w.0[i]).abs() < 1e-4);
            assert!((t0.v[i] / h - v0.v[i]).abs() < 1e-4);
        }
        let near1 = de_casteljau_eval(&b, 1.0 - h).unwrap();
        let t1 = log_se3(&near1.inverse().compose(&g1)).unwrap();
        for i in 0..3 {
            assert!((t1.w.0[i] / h - v1.w.0[i]).abs() < 1e-4);
            assert!((t1.v[i] / h - v1.v[i]).abs() < 1e-4);
        }
    }

    #[test]
    fn decasteljau_reversal_symmetry() {
        let g0 = exp_se3(&Twist::new([0.1, 0.2, -0.1], [0.0, 0.0, 0.0]));
        let g1 = exp_se3(&Twist::new([0.5, -0.3, 0.2], [3.0, -1.0, 2.0]));
        let v0 = Twist::new([0.2, 0.0, 0.1], [1.0, 0.5, -0.5]);
        let v1 = Twist::new([-0.1, 0.3, 0.0], [0.5, 2.0, 1.0]);
        let fwd = BoundaryData::new(g0, g1, v0, v1).unwrap();
        let rev = BoundaryData::new(g1, g0, v1.negated(), v0.negated()).unwrap();
        let k = 11;
        let cf = interpolate_decasteljau(&fwd, k).unwrap();
        let cr = interpolate_decasteljau(&rev, k).unwrap();
        if let (CurveSamples::Se3(f), CurveSamples::Se3(r)) = (&cf.samples, &cr.samples) {
            for j in 0..k {
                assert_motion_close(&f[j].1, &r[k - 1 - j].1, 1e-9);
            }
        }
    }

    #[test]
    fn refinement_shares_samples() {
        let nodes = vec![
            exp_se3(&Twist::new([0.1, 0.0, 0.0], [0.0, 0.0, 0.0])),
            exp_se3(&Twist::new([0.0, 0.2, 0.0], [1.0, 0.0, 0.0])),
            exp_se3(&Twist::new([0.0, 0.0, 0.3], [2.0, 1.0, 0.0])),
        ];
        let s = se3_set(nodes);
        let coarse = interpolate_geodesic(&path(3, false), &s, 3).unwrap();
        let fine = interpolate_geodesic(&path(3, false), &s, 6).unwrap();
        if let (CurveSamples::Se3(c), CurveSamples::Se3(f)) = (&coarse.samples, &fine.samples) {
            for (i, (tc, gc)) in c.iter().enumerate() {
                let (tf, gf) = &f[2 * i];
                assert!((tc - tf).abs() < 1e-15);
                assert_motion_close(gc, gf, 1e-12);
            }
        }
    }

    #[test]
    fn output_rotations_stay_orthonormal() {
        let nodes = vec![
            exp_se3(&Twist::new([0.5, -0.4, 0.3], [0.0, 0.0, 0.0])),
            exp_se3(&Twist::new([-0.2, 0.6, 0.1], [1.0, 2.0, 0.0])),
            exp_se3(&Twist::new([0.3, 0.3, -0.5], [2.0, 0.0, 1.0])),
        ];
        let s = se3_set(nodes);
        for k in [1, 4, 9] {
            let c = interpolate_geodesic(&path(3, false), &s, k).unwrap();
            if let CurveSamples::Se3(v) = c.samples {
                for (_, g) in v {
                    RotationMatrix::from_matrix(*g.r.matrix()).unwrap();
                }
            }
        }
    }

    #[test]
    fn closed_path_wraps_around() {
        let nodes = vec![
            RigidMotion3::new(RotationMatrix::identity(), [0.0, 0.0, 0.0]),
            RigidMotion3::new(RotationMatrix::identity(), [1.0, 0.0, 0.0]),
            RigidMotion3::new(RotationMatrix::identity(), [1.0, 1.0, 0.0]),
            RigidMotion3::new(RotationMatrix::identity(), [0.0, 1.0, 0.0]),
        ];
        let s = se3_set(nodes.clone());
        let c = interpolate_geodesic(&path(4, true), &s, 2).unwrap();
        if let CurveSamples::Se3(v) = c.samples {
            assert_eq!(v.len(), 9);
            assert_motion_close(&v[8].1, &nodes[0], 0.0);
            // midpoint of the wrapping segment
            assert_motion_close(
                &v[7].1,
                &RigidMotion3::new(RotationMatrix::identity(), [0.0, 0.5, 0.0]),
                1e-12,
            );
        }
    }
}
