#ifndef GREEDY_NIM_H
#define GREEDY_NIM_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GnimStatus {
  GNIM_STATUS_OK = 0,
  GNIM_STATUS_NULL_POINTER = 1,
  GNIM_STATUS_INVALID_K = 2,
  GNIM_STATUS_ILLEGAL_MOVE = 3,
  GNIM_STATUS_BUFFER_TOO_SMALL = 4,
  GNIM_STATUS_UNSUPPORTED = 5,
  GNIM_STATUS_INVALID_ARGUMENT = 6,
  GNIM_STATUS_SEARCH_TOO_LARGE = 7,
  GNIM_STATUS_PANIC = 8,
} GnimStatus;

typedef enum GnimVariant {
  GNIM_VARIANT_BOUNDED = 0,
  GNIM_VARIANT_GREEDY = 1,
} GnimVariant;

typedef enum GnimPlay {
  GNIM_PLAY_NORMAL = 0,
  GNIM_PLAY_MISERE = 1,
} GnimPlay;

typedef enum GnimOutcome {
  GNIM_OUTCOME_P = 0,
  GNIM_OUTCOME_N = 1,
} GnimOutcome;

/**
 * Opaque position handle.
 */
typedef struct GnimPosition GnimPosition;

/**
 * Rule set. `k` is read only for the bounded variant and must be positive.
 */
typedef struct GnimSpec {
  enum GnimVariant variant;
  uint64_t k;
  enum GnimPlay play;
} GnimSpec;

/**
 * Tri-state flag: -1 when the statistic does not apply.
 */
typedef int8_t GnimTriState;

typedef struct GnimClassification {
  enum GnimOutcome outcome;
  uint64_t beta;
  uint64_t alpha;
  bool has_r1;
  uint64_t r1;
  GnimTriState k_good;
  GnimTriState k_nice;
  /**
   * Static NUL-terminated clause code, e.g. `"x3_ge_2_beta_odd_k_good_1"` or `"none"`.
   */
  const char *clause;
} GnimClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a normalized position from `len` heap sizes.
 *
 * # Safety
 * `heaps` must point to `len` readable values (it may be NULL when `len` is 0)
 * and `out` must be writable. Free the result with [`gnim_position_free`].
 */
enum GnimStatus gnim_position_new(const uint64_t *heaps, size_t len, struct GnimPosition **out);

/**
 * # Safety
 * `position` must be NULL or a handle from this library that was not freed yet.
 */
void gnim_position_free(struct GnimPosition *position);

/**
 * Number of stored heaps (at least 4), or 0 for NULL.
 *
 * # Safety
 * `position` must be NULL or a live handle.
 */
size_t gnim_position_len(const struct GnimPosition *position);

/**
 * Copies the normalized heaps into `buf`. On `GNIM_STATUS_BUFFER_TOO_SMALL`
 * `out_len` still receives the required length.
 *
 * # Safety
 * `position` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
 */
enum GnimStatus gnim_position_heaps(const struct GnimPosition *position,
                                    uint64_t *buf,
                                    size_t cap,
                                    size_t *out_len);

/**
 * Removes `remove` stones from a largest heap, producing a new handle.
 *
 * # Safety
 * `position` must be a live handle and `out` writable.
 */
enum GnimStatus gnim_apply_move(const struct GnimPosition *position,
                                uint64_t remove,
                                struct GnimPosition **out);

/**
 * # Safety
 * `position` must be a live handle and `out` writable.
 */
enum GnimStatus gnim_classify(struct GnimSpec spec,
                              const struct GnimPosition *position,
                              struct GnimClassification *out);

/**
 * Whether normal and misère play disagree on the position. `spec.play` is ignored.
 *
 * # Safety
 * `position` must be a live handle and `out` writable.
 */
enum GnimStatus gnim_is_singular(struct GnimSpec spec,
                                 const struct GnimPosition *position,
                                 bool *out);

/**
 * Writes all winning removal counts in ascending order.
 *
 * # Safety
 * `position` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
 */
enum GnimStatus gnim_winning_moves(struct GnimSpec spec,
                                   const struct GnimPosition *position,
                                   uint64_t *buf,
                                   size_t cap,
                                   size_t *out_len);

/**
 * Smallest winning removal, or 0 when the position has none.
 *
 * # Safety
 * `position` must be a live handle and `out_remove` writable.
 */
enum GnimStatus gnim_best_move(struct GnimSpec spec,
                               const struct GnimPosition *position,
                               uint64_t *out_remove);

/**
 * Search-free winning removal for misère bounded play, or 0 when none
 * applies. Normal play yields `GNIM_STATUS_UNSUPPORTED`.
 *
 * # Safety
 * `position` must be a live handle and `out_remove` writable.
 */
enum GnimStatus gnim_constructive_move(struct GnimSpec spec,
                                       const struct GnimPosition *position,
                                       uint64_t *out_remove);

/**
 * Static description of a status code.
 */
const char *gnim_status_message(enum GnimStatus status);

/**
 * Library version as a static string.
 */
const char *gnim_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GREEDY_NIM_H */
