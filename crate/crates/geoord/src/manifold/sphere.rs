//! Great-circle geometry on the sphere of radius R.

use crate::error::{Error, Result};
use crate::linalg::{add3, dot3, norm3, scale3, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const RADIUS_TOL: f64 = 1e-9;

/// A point on the sphere of radius `radius`, stored as its 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    p: Vec3,
    radius: f64,
}

impl SpherePoint {
    /// Wrap a vector, checking |p| = radius to 1e-9.
    pub fn new(p: Vec3, radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidPoint(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        let n = norm3(p);
        if (n - radius).abs() > RADIUS_TOL * radius.max(1.0) {
            return Err(Error::InvalidPoint(format!(
                "point norm {n} does not match sphere radius {radius}"
            )));
        }
        Ok(SpherePoint { p, radius })
    }

    /// Scale a nonzero vector onto the sphere.
    pub fn project(p: Vec3, radius: f64) -> Result<Self> {
        let n = norm3(p);
        if n == 0.0 {
            return Err(Error::InvalidPoint("cannot project the origin".into()));
        }
        Ok(SpherePoint {
            p: scale3(p, radius / n),
            radius,
        })
    }

    pub fn coords(&self) -> Vec3 {
        self.p
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Great-circle distance R * arccos(<a,b>/R^2), clamped into [0, pi R].
pub fn sphere_dist(a: &SpherePoint, b: &SpherePoint) -> Result<f64> {
    if (a.radius - b.radius).abs() > RADIUS_TOL * a.radius.max(1.0) {
        return Err(Error::RadiusMismatch {
            a: a.radius,
            b: b.radius,
        });
    }
    let c = (dot3(a.p, b.p) / (a.radius * a.radius)).clamp(-1.0, 1.0);
    Ok(a.radius * c.acos())
}

/// The cut locus of a sphere point is its antipode, at distance pi R.
pub fn sphere_injectivity_radius(radius: f64) -> f64 {
    PI * radius
}

/// Point at fraction `t` along the minor great-circle arc from `a` to `b`.
/// Near-antipodal endpoints leave the arc undetermined and are rejected.
pub fn slerp(a: &SpherePoint, b: &SpherePoint, t: f64) -> Result<SpherePoint> {
    if (a.radius - b.radius).abs() > RADIUS_TOL * a.radius.max(1.0) {
        return Err(Error::RadiusMismatch {
            a: a.radius,
            b: b.radius,
        });
    }
    let omega = (dot3(a.p, b.p) / (a.radius * a.radius))
        .clamp(-1.0, 1.0)
        .acos();
    if omega < 1e-12 {
        return Ok(*a);
    }
    if omega > PI - 1e-9 {
        return Err(Error::AntipodalPoints);
    }
    let sin = omega.sin();
    let w1 = ((1.0 - t) * omega).sin() / sin;
    let w2 = (t * omega).sin() / sin;
    let p = add3(scale3(a.p, w1), scale3(b.p, w2));
    SpherePoint::new(p, a.radius).or_else(|_| SpherePoint::project(p, a.radius))
}
