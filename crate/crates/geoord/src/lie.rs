//! Closed-form exponential/logarithm maps, geodesics and left-invariant
//! distances on SO(3), SE(3), SE(2) and the scaled planar motion group.
//!
//! Rotations are kept as plain 3x3 matrices. The exp/log pair on SO(3):
//!
//! ```text
//! exp[w] = I + (sin|w|/|w|) [w] + ((1-cos|w|)/|w|^2) [w]^2
//! log(R) = (phi / 2 sin phi) (R - R^T),   1 + 2 cos phi = Tr(R), |phi| < pi
//! ```
//!
//! and on SE(3) the translation block goes through
//!
//! ```text
//! A      = I + ((1-cos|w|)/|w|^2) [w] + ((|w|-sin|w|)/|w|^3) [w]^2
//! A^-1   = I - [w]/2 + ((2 sin|w| - |w|(1+cos|w|)) / (2|w|^2 sin|w|)) [w]^2
//! ```
//!
//! The logarithm is unique only while Tr(R) != -1; all operations that go
//! through it report [`Error::AntipodalRotation`] near that singular set.

use crate::error::{Error, Result};
use crate::linalg::{add3, dot3, norm3, scale3, sub3, Mat3, Vec2, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Below this rotation angle the trigonometric coefficient functions are
/// replaced by their Taylor polynomials.
const SMALL_ANGLE: f64 = 1e-4;

/// Tr(R) <= -1 + this margin counts as antipodal.
const ANTIPODAL_MARGIN: f64 = 1e-6;

/// Tolerance for the orthonormality and determinant invariants.
const ROTATION_TOL: f64 = 1e-9;

/// Map an angle to the half-open interval (-pi, pi].
pub fn wrap_angle(x: f64) -> f64 {
    let mut w = x - TAU * (x / TAU).round();
    if w <= -PI {
        w += TAU;
    }
    w
}

/// Map an angle to the canonical range [0, 2*pi).
pub fn canonical_angle(x: f64) -> f64 {
    let mut w = x.rem_euclid(TAU);
    if w >= TAU {
        w -= TAU;
    }
    w
}

/// Element of so(3): the rotation axis scaled by the angle in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngularVector(pub Vec3);

impl AngularVector {
    pub fn zero() -> Self {
        AngularVector([0.0; 3])
    }

    pub fn norm(&self) -> f64 {
        norm3(self.0)
    }

    /// The induced skew-symmetric matrix [w], with [w] x = w cross x.
    pub fn skew(&self) -> Mat3 {
        let [x, y, z] = self.0;
        Mat3([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    }

    pub fn scaled(&self, s: f64) -> Self {
        AngularVector(scale3(self.0, s))
    }
}

/// Element of SO(3): an orthonormal 3x3 matrix with determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationMatrix(Mat3);

impl RotationMatrix {
    pub fn identity() -> Self {
        RotationMatrix(Mat3::IDENTITY)
    }

    /// Wrap a raw matrix, checking orthonormality and determinant to 1e-9.
    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let gram = m.transpose().mul(&m);
        let ortho = gram.frob_dist(&Mat3::IDENTITY);
        if ortho > ROTATION_TOL {
            return Err(Error::InvalidPoint(format!(
                "matrix is not orthonormal (|R^T R - I| = {ortho:.3e})"
            )));
        }
        let det = m.det();
        if (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::InvalidPoint(format!(
                "matrix determinant {det} is not 1"
            )));
        }
        Ok(RotationMatrix(m))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn compose(&self, rhs: &RotationMatrix) -> RotationMatrix {
        RotationMatrix(self.0.mul(&rhs.0))
    }

    pub fn inverse(&self) -> RotationMatrix {
        RotationMatrix(self.0.transpose())
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.0.apply(v)
    }

    /// Relative rotation from `self` to `other`: self^T other.
    pub fn relative_to(&self, other: &RotationMatrix) -> RotationMatrix {
        RotationMatrix(self.0.transpose().mul(&other.0))
    }
}

/// Element of se(3): angular and linear velocity of a rigid body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Twist {
    pub w: AngularVector,
    pub v: Vec3,
}

impl Twist {
    pub fn new(w: Vec3, v: Vec3) -> Self {
        Twist {
            w: AngularVector(w),
            v,
        }
    }

    pub fn zero() -> Self {
        Twist::new([0.0; 3], [0.0; 3])
    }

    pub fn scaled(&self, s: f64) -> Self {
        Twist {
            w: self.w.scaled(s),
            v: scale3(self.v, s),
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }
}

/// Element of SE(3): rotation plus translation, the homogeneous block
/// [[R, d], [0, 1]].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion3 {
    #[serde(rename = "rotation")]
    pub r: RotationMatrix,
    #[serde(rename = "translation")]
    pub d: Vec3,
}

impl RigidMotion3 {
    pub fn identity() -> Self {
        RigidMotion3 {
            r: RotationMatrix::identity(),
            d: [0.0; 3],
        }
    }

    pub fn new(r: RotationMatrix, d: Vec3) -> Self {
        RigidMotion3 { r, d }
    }

    /// Group composition (R1, d1)(R2, d2) = (R1 R2, R1 d2 + d1).
    pub fn compose(&self, rhs: &RigidMotion3) -> RigidMotion3 {
        RigidMotion3 {
            r: self.r.compose(&rhs.r),
            d: add3(self.r.apply(rhs.d), self.d),
        }
    }

    pub fn inverse(&self) -> RigidMotion3 {
        let rt = self.r.inverse();
        RigidMotion3 {
            d: scale3(rt.apply(self.d), -1.0),
            r: rt,
        }
    }

    /// The 4x4 homogeneous form [[R, d], [0, 1]]; the bottom row is exact.
    pub fn homogeneous(&self) -> [[f64; 4]; 4] {
        let r = self.r.matrix().0;
        let mut m = [[0.0; 4]; 4];
        for i in 0..3 {
            m[i][..3].copy_from_slice(&r[i]);
            m[i][3] = self.d[i];
        }
        m[3] = [0.0, 0.0, 0.0, 1.0];
        m
    }

    /// Follow the metric geodesic leaving `self` with body twist `t` for unit
    /// time: the rotation moves along its one-parameter subgroup while the
    /// translation moves on a straight line.
    pub fn metric_exp(&self, t: &Twist) -> RigidMotion3 {
        RigidMotion3 {
            r: self.r.compose(&exp_so3(&t.w)),
            d: add3(self.d, self.r.apply(t.v)),
        }
    }

    /// Body twist of the geodesic from `self` to `other`, the inverse of
    /// [`RigidMotion3::metric_exp`].
    pub fn metric_log_to(&self, other: &RigidMotion3) -> Result<Twist> {
        let w = log_so3(&self.r.relative_to(&other.r))?;
        let v = self.r.inverse().apply(sub3(other.d, self.d));
        Ok(Twist { w, v })
    }
}

/// A planar rigid motion (theta, u, v) with theta kept in [0, 2*pi).
/// Serializes as the 3-array [theta, u, v].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarMotion {
    theta: f64,
    pub u: f64,
    pub v: f64,
}

impl Serialize for PlanarMotion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.theta, self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarMotion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [theta, u, v] = <[f64; 3]>::deserialize(d)?;
        Ok(PlanarMotion::new(theta, u, v))
    }
}

impl PlanarMotion {
    pub fn new(theta: f64, u: f64, v: f64) -> Self {
        PlanarMotion {
            theta: canonical_angle(theta),
            u,
            v,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// A planar motion extended with a log-scale factor: the matrix block is
/// e^lambda R(theta) with translation d. Serializes as the 4-array
/// [lambda, theta, dx, dy].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledPlanarMotion {
    pub lambda: f64,
    theta: f64,
    pub d: Vec2,
}

impl Serialize for ScaledPlanarMotion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lambda, self.theta, self.d[0], self.d[1]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScaledPlanarMotion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lambda, theta, dx, dy] = <[f64; 4]>::deserialize(d)?;
        Ok(ScaledPlanarMotion::new(lambda, theta, [dx, dy]))
    }
}

impl ScaledPlanarMotion {
    pub fn new(lambda: f64, theta: f64, d: Vec2) -> Self {
        ScaledPlanarMotion {
            lambda,
            theta: canonical_angle(theta),
            d,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// The diagonal metric weights: alpha scales the rotation block, beta the
/// translation block. Both must be positive for the metric to be one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricWeights {
    alpha: f64,
    beta: f64,
}

impl MetricWeights {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha > 0.0 && beta > 0.0 {
            Ok(MetricWeights { alpha, beta })
        } else {
            Err(Error::NonPositiveWeights { alpha, beta })
        }
    }

    pub fn unit() -> Self {
        MetricWeights {
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// sin(t)/t with a Taylor fallback near zero.
fn sinc(t: f64) -> f64 {
    if t < SMALL_ANGLE {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// (1 - cos t)/t^2 with a Taylor fallback near zero.
fn one_minus_cos_over_sq(t: f64) -> f64 {
    if t < SMALL_ANGLE {
        let t2 = t * t;
        0.5 - t2 / 24.0 + t2 * t2 / 720.0
    } else {
        (1.0 - t.cos()) / (t * t)
    }
}

/// (t - sin t)/t^3 with a Taylor fallback near zero.
fn t_minus_sin_over_cube(t: f64) -> f64 {
    if t < SMALL_ANGLE {
        let t2 = t * t;
        1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
    } else {
        (t - t.sin()) / (t * t * t)
    }
}

/// Exponential map so(3) -> SO(3), the Rodrigues form.
pub fn exp_so3(w: &AngularVector) -> RotationMatrix {
    let t = w.norm();
    let k = w.skew();
    let k2 = k.mul(&k);
    let m = Mat3::IDENTITY
        .add(&k.scale(sinc(t)))
        .add(&k2.scale(one_minus_cos_over_sq(t)));
    RotationMatrix(m)
}

/// sin/cos decomposition of a rotation: the vee of the skew part has norm
/// |sin phi| and the trace gives cos phi, so phi = atan2(s, c) stays well
/// conditioned at small angles (acos loses half the digits near 1).
fn rotation_angle_parts(m: &Mat3) -> (Vec3, f64, f64) {
    let half_skew = [
        0.5 * (m.0[2][1] - m.0[1][2]),
        0.5 * (m.0[0][2] - m.0[2][0]),
        0.5 * (m.0[1][0] - m.0[0][1]),
    ];
    let sin = norm3(half_skew).min(1.0);
    let cos = 0.5 * (m.trace() - 1.0);
    (half_skew, sin, cos)
}

/// Logarithm map SO(3) -> so(3). Errors when Tr(R) <= -1 + 1e-6: at a half
/// turn the axis is no longer determined by R - R^T.
pub fn log_so3(r: &RotationMatrix) -> Result<AngularVector> {
    let trace = r.matrix().trace();
    if trace <= -1.0 + ANTIPODAL_MARGIN {
        return Err(Error::AntipodalRotation { trace });
    }
    // [w] = (phi / 2 sin phi)(R - R^T)
    let (half_skew, sin, cos) = rotation_angle_parts(r.matrix());
    let phi = sin.atan2(cos);
    let coeff = if phi < SMALL_ANGLE {
        let p2 = phi * phi;
        1.0 + p2 / 6.0 + 7.0 * p2 * p2 / 360.0
    } else {
        phi / sin
    };
    Ok(AngularVector(scale3(half_skew, coeff)))
}

/// Rotation angle |log(R1^-1 R2)|.
pub fn so3_angle_between(a: &RotationMatrix, b: &RotationMatrix) -> Result<f64> {
    let rel = a.relative_to(b);
    let trace = rel.matrix().trace();
    if trace <= -1.0 + ANTIPODAL_MARGIN {
        return Err(Error::AntipodalRotation { trace });
    }
    let (_, sin, cos) = rotation_angle_parts(rel.matrix());
    Ok(sin.atan2(cos))
}

/// The translation factor A of the SE(3) exponential.
fn se3_translation_factor(w: &AngularVector) -> Mat3 {
    let t = w.norm();
    let k = w.skew();
    let k2 = k.mul(&k);
    Mat3::IDENTITY
        .add(&k.scale(one_minus_cos_over_sq(t)))
        .add(&k2.scale(t_minus_sin_over_cube(t)))
}

/// The closed-form inverse of the translation factor A.
fn se3_translation_factor_inv(w: &AngularVector) -> Mat3 {
    let t = w.norm();
    let k = w.skew();
    let k2 = k.mul(&k);
    let c = if t < SMALL_ANGLE {
        let t2 = t * t;
        1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    } else {
        (2.0 * t.sin() - t * (1.0 + t.cos())) / (2.0 * t * t * t.sin())
    };
    Mat3::IDENTITY.add(&k.scale(-0.5)).add(&k2.scale(c))
}

/// Exponential map se(3) -> SE(3).
pub fn exp_se3(t: &Twist) -> RigidMotion3 {
    RigidMotion3 {
        r: exp_so3(&t.w),
        d: se3_translation_factor(&t.w).apply(t.v),
    }
}

/// Logarithm map SE(3) -> se(3); propagates the antipodal error of the
/// rotation logarithm.
pub fn log_se3(g: &RigidMotion3) -> Result<Twist> {
    let w = log_so3(&g.r)?;
    let v = se3_translation_factor_inv(&w).apply(g.d);
    Ok(Twist { w, v })
}

/// Left-invariant distance on SE(3):
/// sqrt(alpha |log(R1^-1 R2)|^2 + beta |d2 - d1|^2).
pub fn dist_se3(a: &RigidMotion3, b: &RigidMotion3, w: &MetricWeights) -> Result<f64> {
    let phi = so3_angle_between(&a.r, &b.r)?;
    let dt = sub3(b.d, a.d);
    Ok((w.alpha * phi * phi + w.beta * dot3(dt, dt)).sqrt())
}

/// Left-invariant distance on SE(2) configurations, with the angle
/// difference wrapped to (-pi, pi].
pub fn dist_se2(a: &PlanarMotion, b: &PlanarMotion, w: &MetricWeights) -> f64 {
    let dt = wrap_angle(a.theta - b.theta);
    let du = a.u - b.u;
    let dv = a.v - b.v;
    (w.alpha * dt * dt + w.beta * (du * du + dv * dv)).sqrt()
}

/// Distance on the scaled planar motion group:
/// sqrt(alpha ((l1-l2)^2 + (t1-t2)^2) + beta |d1-d2|^2), wrapped angle.
pub fn dist_scaled_se2(a: &ScaledPlanarMotion, b: &ScaledPlanarMotion, w: &MetricWeights) -> f64 {
    let dl = a.lambda - b.lambda;
    let dt = wrap_angle(a.theta - b.theta);
    let dx = a.d[0] - b.d[0];
    let dy = a.d[1] - b.d[1];
    (w.alpha * (dl * dl + dt * dt) + w.beta * (dx * dx + dy * dy)).sqrt()
}

/// Exponential of the scaled-rotation algebra element lambda*I + theta*J:
/// the generators commute, so the result is exactly e^lambda R(theta).
pub fn exp_scaled_rot(lambda: f64, theta: f64) -> [[f64; 2]; 2] {
    let s = lambda.exp();
    let (sin, cos) = theta.sin_cos();
    [[s * cos, -s * sin], [s * sin, s * cos]]
}

/// Geodesic between two SE(3) configurations under the diagonal metric:
/// R(t) = R1 exp([w0] t) with [w0] = log(R1^T R2), d(t) linear. Unique only
/// while Tr(R1^T R2) != -1.
pub fn geodesic_se3(a: &RigidMotion3, b: &RigidMotion3, t: f64) -> Result<RigidMotion3> {
    let w0 = log_so3(&a.r.relative_to(&b.r))?;
    Ok(RigidMotion3 {
        r: a.r.compose(&exp_so3(&w0.scaled(t))),
        d: add3(scale3(sub3(b.d, a.d), t), a.d),
    })
}

/// Body twists of the geodesic from `a` to `b` at its two endpoints. The
/// angular parts agree; the linear parts are the same spatial velocity seen
/// from the two body frames.
pub fn geodesic_boundary_twists(a: &RigidMotion3, b: &RigidMotion3) -> Result<(Twist, Twist)> {
    let w = log_so3(&a.r.relative_to(&b.r))?;
    let delta = sub3(b.d, a.d);
    Ok((
        Twist {
            w,
            v: a.r.inverse().apply(delta),
        },
        Twist {
            w,
            v: b.r.inverse().apply(delta),
        },
    ))
}
