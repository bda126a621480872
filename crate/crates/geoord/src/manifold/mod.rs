//! Metric geometry for the non-group manifolds: the sphere and the bilinear
//! parametric patch x(u,v) = (u, v, u*v).

mod bilinear;
mod sphere;

pub use bilinear::{
    bilinear_geodesic_bvp, first_fundamental_form, polyline_length, GeodesicSolution,
    SurfaceParamPoint,
};
pub use sphere::{slerp, sphere_dist, sphere_injectivity_radius, SpherePoint};
