//! C ABI for the curve reconstruction library.
//!
//! Handles are opaque pointers created and freed here; every fallible call
//! returns a [`GeoordStatus`] and leaves a human-readable message behind
//! [`geoord_last_error`] (thread-local, valid until the next failing call on
//! the same thread).

use geoord::error::Error;
use geoord::io::{parse_sample_json, SampleFile};
use geoord::lie::{
    dist_se2, dist_se3, exp_se3, log_se3, MetricWeights, PlanarMotion, RigidMotion3,
    RotationMatrix, Twist,
};
use geoord::linalg::Mat3;
use geoord::reconstruct::{
    build_graph, close_loop, extract_path, mst, order_nn_graph, order_nncrust_r3, OrderedPath,
};
use geoord::sampling::SampleSet;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeoordStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8, non-positive weights, index out of range.
    InvalidArgument = 1,
    /// Malformed JSON or an unknown manifold tag.
    ParseError = 2,
    /// A rotation logarithm hit the antipodal set.
    Antipodal = 3,
    /// The spanning tree branches; the sample is not dense.
    BranchingTree = 4,
    /// NN-CRUST produced a vertex with a number of edges other than two.
    NonManifold = 5,
    /// The requested algorithm needs a start index.
    StartRequired = 6,
    InternalError = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap();
    });
}

fn status_for(e: &Error) -> GeoordStatus {
    match e {
        Error::AntipodalRotation { .. } | Error::AntipodalPair { .. } => GeoordStatus::Antipodal,
        Error::BranchingTree { .. } => GeoordStatus::BranchingTree,
        Error::NonManifoldOutput { .. } => GeoordStatus::NonManifold,
        Error::StartRequired => GeoordStatus::StartRequired,
        Error::Json(_) | Error::InvalidInput(_) | Error::InvalidPoint(_) => {
            GeoordStatus::ParseError
        }
        Error::NonPositiveWeights { .. } | Error::IndexOutOfRange { .. } => {
            GeoordStatus::InvalidArgument
        }
        _ => GeoordStatus::InternalError,
    }
}

fn fail(e: &Error) -> GeoordStatus {
    set_error(&e.to_string());
    status_for(e)
}

/// Message describing the most recent failure on this thread. Never null;
/// the pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn geoord_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque sample-set handle.
pub struct GeoordSamples {
    set: SampleSet,
    weights: MetricWeights,
}

/// Opaque ordering handle.
pub struct GeoordPath {
    path: OrderedPath,
}

/// Parse a sample-set JSON document (the same format the CLI reads) under
/// the given metric weights. On success writes a handle to `out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn geoord_samples_from_json(
    json: *const c_char,
    alpha: f64,
    beta: f64,
    out: *mut *mut GeoordSamples,
) -> GeoordStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("sample JSON is not valid UTF-8");
            return GeoordStatus::InvalidArgument;
        }
    };
    let weights = match MetricWeights::new(alpha, beta) {
        Ok(w) => w,
        Err(e) => return fail(&e),
    };
    let parsed: SampleFile = match parse_sample_json(text) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    match parsed.to_sample_set(weights) {
        Ok(set) => {
            *out = Box::into_raw(Box::new(GeoordSamples { set, weights }));
            GeoordStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `handle` must come from [`geoord_samples_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn geoord_samples_free(handle: *mut GeoordSamples) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of points in the sample set; 0 for a null handle.
///
/// # Safety
/// `handle` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn geoord_samples_len(handle: *const GeoordSamples) -> usize {
    if handle.is_null() {
        0
    } else {
        (*handle).set.len()
    }
}

unsafe fn order_common(
    handle: *const GeoordSamples,
    out: *mut *mut GeoordPath,
    run: impl FnOnce(&GeoordSamples) -> Result<OrderedPath, Error>,
) -> GeoordStatus {
    if handle.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    *out = ptr::null_mut();
    match run(&*handle) {
        Ok(path) => {
            *out = Box::into_raw(Box::new(GeoordPath { path }));
            GeoordStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Reorder the samples with the minimal-spanning-tree algorithm and decide
/// loop closure with the given slack.
///
/// # Safety
/// `handle` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn geoord_order_mst(
    handle: *const GeoordSamples,
    slack: f64,
    out: *mut *mut GeoordPath,
) -> GeoordStatus {
    order_common(handle, out, |s| {
        let g = build_graph(&s.set)?;
        Ok(close_loop(extract_path(&mst(&g))?, &g, slack))
    })
}

/// Greedy nearest-neighbor ordering from a known start index.
///
/// # Safety
/// `handle` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn geoord_order_nn(
    handle: *const GeoordSamples,
    start: usize,
    out: *mut *mut GeoordPath,
) -> GeoordStatus {
    order_common(handle, out, |s| {
        if start >= s.set.len() {
            return Err(Error::IndexOutOfRange {
                index: start,
                len: s.set.len(),
            });
        }
        let g = build_graph(&s.set)?;
        Ok(order_nn_graph(&g, start))
    })
}

/// NN-CRUST ordering of an SE(2) sample via its Euclidean embedding.
///
/// # Safety
/// `handle` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn geoord_order_nncrust(
    handle: *const GeoordSamples,
    out: *mut *mut GeoordPath,
) -> GeoordStatus {
    order_common(handle, out, |s| order_nncrust_r3(&s.set, &s.weights))
}

/// # Safety
/// `handle` must come from an ordering call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn geoord_path_free(handle: *mut GeoordPath) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of entries in the ordering.
///
/// # Safety
/// `handle` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn geoord_path_len(handle: *const GeoordPath) -> usize {
    if handle.is_null() {
        0
    } else {
        (*handle).path.order.len()
    }
}

/// Whether the ordering was recognized as a closed curve.
///
/// # Safety
/// `handle` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn geoord_path_closed(handle: *const GeoordPath) -> bool {
    !handle.is_null() && (*handle).path.closed
}

/// Sample index at `pos` in the ordering; usize::MAX when out of range.
///
/// # Safety
/// `handle` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn geoord_path_index(handle: *const GeoordPath, pos: usize) -> usize {
    if handle.is_null() {
        return usize::MAX;
    }
    let order = &(*handle).path.order;
    if pos >= order.len() {
        usize::MAX
    } else {
        order[pos]
    }
}

fn rotation_from_flat(rotation: &[f64; 9]) -> Result<RotationMatrix, Error> {
    RotationMatrix::from_matrix(Mat3([
        [rotation[0], rotation[1], rotation[2]],
        [rotation[3], rotation[4], rotation[5]],
        [rotation[6], rotation[7], rotation[8]],
    ]))
}

fn rotation_to_flat(r: &RotationMatrix, out: &mut [f64; 9]) {
    let m = r.matrix().0;
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = m[i][j];
        }
    }
}

/// SE(3) exponential: twist = [wx, wy, wz, vx, vy, vz] to a row-major
/// rotation and a translation.
///
/// # Safety
/// All pointers must reference arrays of the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn geoord_exp_se3(
    twist: *const f64,
    rotation_out: *mut f64,
    translation_out: *mut f64,
) -> GeoordStatus {
    if twist.is_null() || rotation_out.is_null() || translation_out.is_null() {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    let t = std::slice::from_raw_parts(twist, 6);
    let g = exp_se3(&Twist::new([t[0], t[1], t[2]], [t[3], t[4], t[5]]));
    let mut flat = [0.0; 9];
    rotation_to_flat(&g.r, &mut flat);
    std::slice::from_raw_parts_mut(rotation_out, 9).copy_from_slice(&flat);
    std::slice::from_raw_parts_mut(translation_out, 3).copy_from_slice(&g.d);
    GeoordStatus::Ok
}

/// SE(3) logarithm, the inverse of [`geoord_exp_se3`]. Fails with
/// `Antipodal` when the rotation trace is at -1.
///
/// # Safety
/// All pointers must reference arrays of the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn geoord_log_se3(
    rotation: *const f64,
    translation: *const f64,
    twist_out: *mut f64,
) -> GeoordStatus {
    if rotation.is_null() || translation.is_null() || twist_out.is_null() {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    let mut flat = [0.0; 9];
    flat.copy_from_slice(std::slice::from_raw_parts(rotation, 9));
    let r = match rotation_from_flat(&flat) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let d = std::slice::from_raw_parts(translation, 3);
    match log_se3(&RigidMotion3::new(r, [d[0], d[1], d[2]])) {
        Ok(t) => {
            let out = std::slice::from_raw_parts_mut(twist_out, 6);
            out[..3].copy_from_slice(&t.w.0);
            out[3..].copy_from_slice(&t.v);
            GeoordStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Left-invariant SE(3) distance between two poses given as row-major
/// rotations and translations.
///
/// # Safety
/// All pointers must reference arrays of the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn geoord_dist_se3(
    rotation_a: *const f64,
    translation_a: *const f64,
    rotation_b: *const f64,
    translation_b: *const f64,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> GeoordStatus {
    if rotation_a.is_null()
        || translation_a.is_null()
        || rotation_b.is_null()
        || translation_b.is_null()
        || out.is_null()
    {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    let weights = match MetricWeights::new(alpha, beta) {
        Ok(w) => w,
        Err(e) => return fail(&e),
    };
    let mut fa = [0.0; 9];
    let mut fb = [0.0; 9];
    fa.copy_from_slice(std::slice::from_raw_parts(rotation_a, 9));
    fb.copy_from_slice(std::slice::from_raw_parts(rotation_b, 9));
    let (ra, rb) = match (rotation_from_flat(&fa), rotation_from_flat(&fb)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(&e),
    };
    let da = std::slice::from_raw_parts(translation_a, 3);
    let db = std::slice::from_raw_parts(translation_b, 3);
    let a = RigidMotion3::new(ra, [da[0], da[1], da[2]]);
    let b = RigidMotion3::new(rb, [db[0], db[1], db[2]]);
    match dist_se3(&a, &b, &weights) {
        Ok(d) => {
            *out = d;
            GeoordStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// SE(2) configuration distance between poses [theta, u, v].
///
/// # Safety
/// `pose_a` and `pose_b` must point to 3 doubles, `out` to one.
#[no_mangle]
pub unsafe extern "C" fn geoord_dist_se2(
    pose_a: *const f64,
    pose_b: *const f64,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> GeoordStatus {
    if pose_a.is_null() || pose_b.is_null() || out.is_null() {
        set_error("null pointer argument");
        return GeoordStatus::InvalidArgument;
    }
    let weights = match MetricWeights::new(alpha, beta) {
        Ok(w) => w,
        Err(e) => return fail(&e),
    };
    let a = std::slice::from_raw_parts(pose_a, 3);
    let b = std::slice::from_raw_parts(pose_b, 3);
    *out = dist_se2(
        &PlanarMotion::new(a[0], a[1], a[2]),
        &PlanarMotion::new(b[0], b[1], b[2]),
        &weights,
    );
    GeoordStatus::Ok
}
