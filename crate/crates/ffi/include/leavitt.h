#ifndef LEAVITT_H
#define LEAVITT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Direction of a local-unit factorization.
 */
typedef enum LvDirection {
  /**
   * Degrees `(k, -k)`.
   */
  LV_DIRECTION_POS_NEG = 0,
  /**
   * Degrees `(-k, k)`.
   */
  LV_DIRECTION_NEG_POS = 1,
} LvDirection;

/**
 * Result of every call.
 */
typedef enum LvStatus {
  LV_STATUS_OK = 0,
  LV_STATUS_NULL_POINTER = 1,
  LV_STATUS_INVALID_UTF8 = 2,
  LV_STATUS_SYNTAX = 3,
  LV_STATUS_INVALID_GRAPH = 4,
  LV_STATUS_UNKNOWN_ID = 5,
  LV_STATUS_NOT_COMPOSABLE = 6,
  LV_STATUS_UNSUPPORTED = 7,
  LV_STATUS_NOT_HOMOGENEOUS = 8,
  LV_STATUS_NOT_FOUND = 9,
  LV_STATUS_CERTIFICATE_REJECTED = 10,
  LV_STATUS_GRAPH_MISMATCH = 11,
  LV_STATUS_INVALID_ARGUMENT = 12,
  LV_STATUS_PANIC = 13,
} LvStatus;

/**
 * An element of the Leavitt path algebra in normal form.
 */
typedef struct LvElement LvElement;

/**
 * A validated graph; ladder presets are materialized at a fixed depth.
 */
typedef struct LvGraph LvGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *lv_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lv_string_free(char *s);

/**
 * Parses a graph document (finite or ladder). Ladder presets are
 * materialized with `truncate` stages for algebra operations; pass 0 for
 * the default depth.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LvStatus lv_graph_from_json(const char *json, size_t truncate, struct LvGraph **out);

/**
 * # Safety
 * `g` must come from [`lv_graph_from_json`] and not have been freed.
 */
void lv_graph_free(struct LvGraph *g);

/**
 * Strong-grading verdict as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LvStatus lv_analyze_json(const struct LvGraph *g, bool allow_empty_prefix, char **out);

/**
 * Property (Y) verdict as JSON; a failure also carries a certificate under
 * `"certificate"`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LvStatus lv_property_y_json(const struct LvGraph *g, bool allow_empty_prefix, char **out);

/**
 * Parses and normalizes an element.
 *
 * # Safety
 * `g` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum LvStatus lv_element_parse(const struct LvGraph *g, const char *expr, struct LvElement **out);

/**
 * # Safety
 * `x` must come from this library and not have been freed.
 */
void lv_element_free(struct LvElement *x);

/**
 * Normal form in the element grammar.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum LvStatus lv_element_to_string(const struct LvElement *x, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum LvStatus lv_element_mul(const struct LvElement *a,
                             const struct LvElement *b,
                             struct LvElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum LvStatus lv_element_add(const struct LvElement *a,
                             const struct LvElement *b,
                             struct LvElement **out);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum LvStatus lv_element_star(const struct LvElement *a, struct LvElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum LvStatus lv_element_equals(const struct LvElement *a, const struct LvElement *b, bool *out);

/**
 * Writes the degree when `a` is homogeneous and nonzero; otherwise
 * `*homogeneous` is false.
 *
 * # Safety
 * `a` must be a live handle; outputs must be writable.
 */
enum LvStatus lv_element_degree(const struct LvElement *a, bool *homogeneous, int64_t *degree);

/**
 * Exact dimension of the core subalgebra spanned by paths of length at
 * most `k` over the first `cutoff` edges.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LvStatus lv_fd_dimension(const struct LvGraph *g, size_t k, size_t cutoff, size_t *out);

/**
 * Embeds a degree-0 element in a finite-dimensional *-subalgebra; writes
 * the certificate JSON.
 *
 * # Safety
 * `g` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum LvStatus lv_core_embed_json(const struct LvGraph *g, const char *expr, char **out);

/**
 * Writes `p_v` as a sum of products of homogeneous elements; writes the
 * certificate JSON, or returns `NotFound` when no witness exists up to
 * `max_level`.
 *
 * # Safety
 * `g` must be a live handle, `vertex` NUL-terminated, `out` writable.
 */
enum LvStatus lv_factor_unit_json(const struct LvGraph *g,
                                  const char *vertex,
                                  size_t degree,
                                  enum LvDirection direction,
                                  size_t max_level,
                                  char **out);

/**
 * Re-verifies a serialized certificate.
 *
 * # Safety
 * `json` must be NUL-terminated.
 */
enum LvStatus lv_verify_certificate(const char *json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEAVITT_H */
