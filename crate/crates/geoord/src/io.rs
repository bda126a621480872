//! JSON file formats for samples, orderings, interpolated curves and
//! density reports. Every file is UTF-8 JSON; sample files carry a manifold
//! tag so commands never guess the geometry.

use crate::error::{Error, Result};
use crate::interpolate::{CurveSamples, MotionCurve, Scheme};
use crate::lie::{MetricWeights, PlanarMotion, RigidMotion3, RotationMatrix, Twist};
use crate::linalg::Mat3;
use crate::manifold::SpherePoint;
use crate::reconstruct::{Algorithm, OrderedPath};
use crate::sampling::{SamplePoints, SampleSet};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Extra manifold parameters; only the sphere needs one.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ManifoldParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

/// On-disk form of a sample set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleFile {
    pub manifold: String,
    #[serde(default)]
    pub params: ManifoldParams,
    pub points: serde_json::Value,
    /// Boundary twists [wx, wy, wz, vx, vy, vz]; only the de Casteljau
    /// scheme reads them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocities: Option<Vec<[f64; 6]>>,
}

impl SampleFile {
    pub fn from_sample_set(s: &SampleSet) -> SampleFile {
        let (manifold, params, points) = match s.points() {
            SamplePoints::Plane(v) => (
                "plane",
                ManifoldParams::default(),
                serde_json::to_value(v).unwrap(),
            ),
            SamplePoints::Sphere(v) => (
                "s2",
                ManifoldParams {
                    radius: v.first().map(|p| p.radius()),
                },
                serde_json::to_value(v.iter().map(|p| p.coords()).collect::<Vec<_>>()).unwrap(),
            ),
            SamplePoints::Se2(v) => (
                "se2",
                ManifoldParams::default(),
                serde_json::to_value(v).unwrap(),
            ),
            SamplePoints::Se3(v) => (
                "se3",
                ManifoldParams::default(),
                serde_json::to_value(v).unwrap(),
            ),
            SamplePoints::ScaledSe2(v) => (
                "scaled_se2",
                ManifoldParams::default(),
                serde_json::to_value(v).unwrap(),
            ),
        };
        SampleFile {
            manifold: manifold.to_string(),
            params,
            points,
            velocities: None,
        }
    }

    pub fn to_sample_set(&self, weights: MetricWeights) -> Result<SampleSet> {
        let points = match self.manifold.as_str() {
            "plane" => SamplePoints::Plane(serde_json::from_value(self.points.clone())?),
            "s2" => {
                let radius = self.params.radius.unwrap_or(1.0);
                let raw: Vec<[f64; 3]> = serde_json::from_value(self.points.clone())?;
                let mut pts = Vec::with_capacity(raw.len());
                for p in raw {
                    pts.push(SpherePoint::new(p, radius)?);
                }
                SamplePoints::Sphere(pts)
            }
            "se2" => SamplePoints::Se2(serde_json::from_value(self.points.clone())?),
            "se3" => {
                let raw: Vec<Se3PointJson> = serde_json::from_value(self.points.clone())?;
                let mut pts = Vec::with_capacity(raw.len());
                for p in raw {
                    pts.push(RigidMotion3::new(
                        RotationMatrix::from_matrix(Mat3(p.rotation))?,
                        p.translation,
                    ));
                }
                SamplePoints::Se3(pts)
            }
            "scaled_se2" => SamplePoints::ScaledSe2(serde_json::from_value(self.points.clone())?),
            other => {
                return Err(Error::InvalidInput(format!("unknown manifold tag {other}")))
            }
        };
        SampleSet::new(points, weights)
    }

    pub fn boundary_twists(&self) -> Option<Vec<Twist>> {
        self.velocities.as_ref().map(|vs| {
            vs.iter()
                .map(|x| Twist::new([x[0], x[1], x[2]], [x[3], x[4], x[5]]))
                .collect()
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Se3PointJson {
    rotation: [[f64; 3]; 3],
    translation: [f64; 3],
}

/// On-disk form of an ordering.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderFile {
    pub order: Vec<usize>,
    pub closed: bool,
    pub algorithm: String,
    pub max_degree: usize,
}

impl OrderFile {
    pub fn from_path(p: &OrderedPath) -> OrderFile {
        OrderFile {
            order: p.order.clone(),
            closed: p.closed,
            algorithm: p.algorithm.as_str().to_string(),
            max_degree: p.max_degree,
        }
    }

    pub fn to_path(&self) -> Result<OrderedPath> {
        Ok(OrderedPath {
            order: self.order.clone(),
            closed: self.closed,
            algorithm: self.algorithm.parse().unwrap_or(Algorithm::Mst),
            max_degree: self.max_degree,
        })
    }
}

/// Ground-truth file written next to demo samples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruthFile {
    pub curve: String,
    pub order: Vec<usize>,
    pub closed: bool,
    /// Worst consecutive gap of the generated sample under its metric.
    pub epsilon: f64,
    pub n: usize,
    pub seed: u64,
}

/// One sample of an interpolated curve on disk; rotations are 9 floats in
/// row-major order, planar samples carry theta instead.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSampleJson {
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<[f64; 9]>,
    pub translation: Vec<f64>,
}

/// On-disk form of an interpolated motion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub manifold: String,
    pub scheme: String,
    pub samples: Vec<CurveSampleJson>,
}

impl CurveFile {
    pub fn from_motion_curve(c: &MotionCurve) -> CurveFile {
        let (manifold, samples) = match &c.samples {
            CurveSamples::Se3(v) => (
                "se3",
                v.iter()
                    .map(|(t, g)| {
                        let m = g.r.matrix().0;
                        let mut flat = [0.0; 9];
                        for i in 0..3 {
                            flat[3 * i..3 * i + 3].copy_from_slice(&m[i]);
                        }
                        CurveSampleJson {
                            t: *t,
                            theta: None,
                            rotation: Some(flat),
                            translation: g.d.to_vec(),
                        }
                    })
                    .collect(),
            ),
            CurveSamples::Se2(v) => (
                "se2",
                v.iter()
                    .map(|(t, m)| CurveSampleJson {
                        t: *t,
                        theta: Some(m.theta()),
                        rotation: None,
                        translation: vec![m.u, m.v],
                    })
                    .collect(),
            ),
        };
        CurveFile {
            manifold: manifold.to_string(),
            scheme: c.scheme.as_str().to_string(),
            samples,
        }
    }

    pub fn to_motion_curve(&self) -> Result<MotionCurve> {
        let scheme = match self.scheme.as_str() {
            "geodesic" => Scheme::Geodesic,
            "partial_geodesic" => Scheme::PartialGeodesic,
            "de_casteljau" => Scheme::DeCasteljau,
            other => return Err(Error::InvalidInput(format!("unknown scheme {other}"))),
        };
        let samples = match self.manifold.as_str() {
            "se3" => {
                let mut out = Vec::with_capacity(self.samples.len());
                for s in &self.samples {
                    let flat = s.rotation.ok_or_else(|| {
                        Error::InvalidInput("se3 curve sample without rotation".into())
                    })?;
                    if s.translation.len() != 3 {
                        return Err(Error::InvalidInput("se3 translation must be 3D".into()));
                    }
                    let rotation = Mat3([
                        [flat[0], flat[1], flat[2]],
                        [flat[3], flat[4], flat[5]],
                        [flat[6], flat[7], flat[8]],
                    ]);
                    out.push((
                        s.t,
                        RigidMotion3::new(
                            RotationMatrix::from_matrix(rotation)?,
                            [s.translation[0], s.translation[1], s.translation[2]],
                        ),
                    ));
                }
                CurveSamples::Se3(out)
            }
            "se2" => {
                let mut out = Vec::with_capacity(self.samples.len());
                for s in &self.samples {
                    let theta = s.theta.ok_or_else(|| {
                        Error::InvalidInput("se2 curve sample without theta".into())
                    })?;
                    if s.translation.len() != 2 {
                        return Err(Error::InvalidInput("se2 translation must be 2D".into()));
                    }
                    out.push((
                        s.t,
                        PlanarMotion::new(theta, s.translation[0], s.translation[1]),
                    ));
                }
                CurveSamples::Se2(out)
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "curves are stored only for se2/se3, got {other}"
                )))
            }
        };
        Ok(MotionCurve { scheme, samples })
    }
}

/// Parse a sample file from in-memory JSON text.
pub fn parse_sample_json(text: &str) -> Result<SampleFile> {
    Ok(serde_json::from_str(text)?)
}

/// Write a value as pretty JSON with a trailing newline.
pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
