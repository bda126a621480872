//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The rotation logarithm is singular: Trace(R) is at or below -1 + 1e-6.
    #[error("antipodal rotation: trace {trace} is too close to -1 for a unique logarithm")]
    AntipodalRotation { trace: f64 },

    /// An antipodal rotation was hit while building a distance matrix.
    #[error("antipodal rotation between samples {i} and {j}")]
    AntipodalPair { i: usize, j: usize },

    /// Two sphere points with different radii were compared.
    #[error("sphere radius mismatch: {a} vs {b}")]
    RadiusMismatch { a: f64, b: f64 },

    /// A sphere geodesic between (near-)antipodal points is not unique.
    #[error("antipodal sphere points: geodesic is not unique")]
    AntipodalPoints,

    /// A point does not satisfy its manifold invariant.
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    /// Metric weights must be strictly positive.
    #[error("metric weights must be positive, got alpha={alpha}, beta={beta}")]
    NonPositiveWeights { alpha: f64, beta: f64 },

    /// The BVP Newton iteration did not reach the residual target.
    #[error("geodesic BVP did not converge: residual {residual} after {iterations} iterations")]
    NoConvergence {
        residual: f64,
        iterations: usize,
        best: Box<crate::manifold::GeodesicSolution>,
    },

    /// Fewer than two sample points.
    #[error("sample set has {got} points, need at least {needed}")]
    EmptySample { needed: usize, got: usize },

    /// Two sample points coincide (pairwise distance below 1e-12).
    #[error("duplicate sample points at indices {i} and {j}")]
    DuplicatePoints { i: usize, j: usize },

    /// Points from different manifolds (or with different parameters) were mixed.
    #[error("manifold mismatch: expected {expected}, got {got}")]
    ManifoldMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// The spanning tree has vertices of degree three or more, so no
    /// Hamiltonian path exists; the sample is not dense.
    #[error("spanning tree branches at vertices {vertices:?}; sample is not dense")]
    BranchingTree { vertices: Vec<usize> },

    /// NN-CRUST produced a vertex with a number of edges other than two.
    #[error("NN-CRUST output is not a path or cycle; offending vertices {vertices:?}")]
    NonManifoldOutput { vertices: Vec<usize> },

    /// An index was out of range for the sample set.
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    /// Interpolation needs more nodes than were supplied.
    #[error("too few nodes: got {got}, need at least {needed}")]
    TooFewNodes { needed: usize, got: usize },

    /// A frame record is missing the rectangle mask needed by the estimator.
    #[error("frame {id} has no mask")]
    MissingMask { id: String },

    /// The measured overlap area is outside the invertible range of the
    /// rotation estimator.
    #[error("overlap area {area} outside invertible range ({min}, {max}]")]
    AreaOutOfRange { area: f64, min: f64, max: f64 },

    /// A polygon with fewer than three vertices or near-zero area.
    #[error("degenerate polygon")]
    DegeneratePolygon,

    /// Sequential nearest-neighbor ordering needs a start frame.
    #[error("algorithm 'nn' requires a start point")]
    StartRequired,

    /// Anything wrong with CLI inputs: unknown demo names, malformed files,
    /// missing registrations.
    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
