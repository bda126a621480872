#ifndef GEOORD_H
#define GEOORD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum GeoordStatus {
  GeoordStatus_Ok = 0,
  /**
   * Null pointer, bad UTF-8, non-positive weights, index out of range.
   */
  GeoordStatus_InvalidArgument = 1,
  /**
   * Malformed JSON or an unknown manifold tag.
   */
  GeoordStatus_ParseError = 2,
  /**
   * A rotation logarithm hit the antipodal set.
   */
  GeoordStatus_Antipodal = 3,
  /**
   * The spanning tree branches; the sample is not dense.
   */
  GeoordStatus_BranchingTree = 4,
  /**
   * NN-CRUST produced a vertex with a number of edges other than two.
   */
  GeoordStatus_NonManifold = 5,
  /**
   * The requested algorithm needs a start index.
   */
  GeoordStatus_StartRequired = 6,
  GeoordStatus_InternalError = 7,
} GeoordStatus;

/**
 * Opaque ordering handle.
 */
typedef struct GeoordPath GeoordPath;

/**
 * Opaque sample-set handle.
 */
typedef struct GeoordSamples GeoordSamples;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. Never null;
 * the pointer stays valid until the next failing call on the same thread.
 */
const char *geoord_last_error(void);

/**
 * Parse a sample-set JSON document (the same format the CLI reads) under
 * the given metric weights. On success writes a handle to `out`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GeoordStatus geoord_samples_from_json(const char *json,
                                           double alpha,
                                           double beta,
                                           struct GeoordSamples **out);

/**
 * # Safety
 * `handle` must come from [`geoord_samples_from_json`] and not be freed twice.
 */
void geoord_samples_free(struct GeoordSamples *handle);

/**
 * Number of points in the sample set; 0 for a null handle.
 *
 * # Safety
 * `handle` must be valid or null.
 */
uintptr_t geoord_samples_len(const struct GeoordSamples *handle);

/**
 * Reorder the samples with the minimal-spanning-tree algorithm and decide
 * loop closure with the given slack.
 *
 * # Safety
 * `handle` and `out` must be valid pointers.
 */
enum GeoordStatus geoord_order_mst(const struct GeoordSamples *handle,
                                   double slack,
                                   struct GeoordPath **out);

/**
 * Greedy nearest-neighbor ordering from a known start index.
 *
 * # Safety
 * `handle` and `out` must be valid pointers.
 */
enum GeoordStatus geoord_order_nn(const struct GeoordSamples *handle,
                                  uintptr_t start,
                                  struct GeoordPath **out);

/**
 * NN-CRUST ordering of an SE(2) sample via its Euclidean embedding.
 *
 * # Safety
 * `handle` and `out` must be valid pointers.
 */
enum GeoordStatus geoord_order_nncrust(const struct GeoordSamples *handle, struct GeoordPath **out);

/**
 * # Safety
 * `handle` must come from an ordering call and not be freed twice.
 */
void geoord_path_free(struct GeoordPath *handle);

/**
 * Number of entries in the ordering.
 *
 * # Safety
 * `handle` must be valid or null.
 */
uintptr_t geoord_path_len(const struct GeoordPath *handle);

/**
 * Whether the ordering was recognized as a closed curve.
 *
 * # Safety
 * `handle` must be valid or null.
 */
bool geoord_path_closed(const struct GeoordPath *handle);

/**
 * Sample index at `pos` in the ordering; usize::MAX when out of range.
 *
 * # Safety
 * `handle` must be valid or null.
 */
uintptr_t geoord_path_index(const struct GeoordPath *handle, uintptr_t pos);

/**
 * SE(3) exponential: twist = [wx, wy, wz, vx, vy, vz] to a row-major
 * rotation and a translation.
 *
 * # Safety
 * All pointers must reference arrays of the documented lengths.
 */
enum GeoordStatus geoord_exp_se3(const double *twist,
                                 double *rotation_out,
                                 double *translation_out);

/**
 * SE(3) logarithm, the inverse of [`geoord_exp_se3`]. Fails with
 * `Antipodal` when the rotation trace is at -1.
 *
 * # Safety
 * All pointers must reference arrays of the documented lengths.
 */
enum GeoordStatus geoord_log_se3(const double *rotation,
                                 const double *translation,
                                 double *twist_out);

/**
 * Left-invariant SE(3) distance between two poses given as row-major
 * rotations and translations.
 *
 * # Safety
 * All pointers must reference arrays of the documented lengths.
 */
enum GeoordStatus geoord_dist_se3(const double *rotation_a,
                                  const double *translation_a,
                                  const double *rotation_b,
                                  const double *translation_b,
                                  double alpha,
                                  double beta,
                                  double *out);

/**
 * SE(2) configuration distance between poses [theta, u, v].
 *
 * # Safety
 * `pose_a` and `pose_b` must point to 3 doubles, `out` to one.
 */
enum GeoordStatus geoord_dist_se2(const double *pose_a,
                                  const double *pose_b,
                                  double alpha,
                                  double beta,
                                  double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOORD_H */
