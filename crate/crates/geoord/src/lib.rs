//! Reconstruction of smooth simple curves from unordered dense samples on
//! Riemannian manifolds: the sphere, SE(2), SE(3) and scaled planar motions.
//!
//! The pipeline is distance matrix -> minimal spanning tree -> path
//! extraction, with closed-form left-invariant metrics on the motion groups,
//! sampling-density checks that justify the ordering, geodesic / spline /
//! de Casteljau interpolation of the ordered samples, and a motion-frame
//! ordering front end for jumbled pose sequences.

pub mod demo;
pub mod error;
pub mod frames;
pub mod interpolate;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod manifold;
pub mod plot;
pub mod reconstruct;
pub mod sampling;

pub use error::{Error, Result};
