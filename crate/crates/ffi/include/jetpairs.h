#ifndef JETPAIRS_H
#define JETPAIRS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Terminal kinds of a closure certificate.
 */
#define JP_TERMINAL_IN_U 0

#define JP_TERMINAL_SPECTRUM_SPLIT 1

#define JP_TERMINAL_STALLED 2

/**
 * Export flavors for `jp_export_ideal`.
 */
#define JP_EXPORT_GENERIC 0

#define JP_EXPORT_MACAULAY2 1

#define JP_EXPORT_SINGULAR 2

typedef enum JpStatus {
  JpStatus_Ok = 0,
  JpStatus_NullPointer = 1,
  JpStatus_InvalidArgument = 2,
  JpStatus_Parse = 3,
  JpStatus_ShapeMismatch = 4,
  JpStatus_FieldMismatch = 5,
  JpStatus_NonCommuting = 6,
  JpStatus_Infeasible = 7,
  JpStatus_Precondition = 8,
  JpStatus_Panic = 99,
} JpStatus;

/**
 * Opaque matrix polynomial handle.
 */
typedef struct JpMatPoly JpMatPoly;

typedef struct JpBounds {
  int64_t dim_w_bound;
  int64_t dim_c_a0;
  int64_t dim_v_bound;
  int64_t expected_dim;
  int64_t inequality_value;
  int64_t delta;
  bool reducible;
} JpBounds;

typedef struct JpThresholds {
  int64_t mu;
  int64_t beta;
  int64_t n_k;
} JpThresholds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *jp_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void jp_string_free(char *s);

/**
 * Zero `n x n` matrix polynomial of order `k`; `characteristic` 0 means Q.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JpStatus jp_matpoly_new(uint64_t characteristic, size_t n, size_t k, struct JpMatPoly **out);

/**
 * Parses one `matpoly n k char` record; the field comes from the header.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum JpStatus jp_matpoly_parse(const char *text, struct JpMatPoly **out);

/**
 * # Safety
 * `h` must be null or a handle from this library that was not freed.
 */
void jp_matpoly_free(struct JpMatPoly *h);

/**
 * Size `n`, order `k` and field characteristic of a handle.
 *
 * # Safety
 * `h` must be a live handle; output pointers may be null to skip them.
 */
enum JpStatus jp_matpoly_shape(const struct JpMatPoly *h,
                               size_t *n,
                               size_t *k,
                               uint64_t *characteristic);

/**
 * Sets the `(i, j)` entry (zero-based) of the `t^s` coefficient.
 *
 * # Safety
 * `h` must be a live handle and `value` a NUL-terminated string.
 */
enum JpStatus jp_matpoly_set(struct JpMatPoly *h, size_t s, size_t i, size_t j, const char *value);

/**
 * Reads the `(i, j)` entry (zero-based) of the `t^s` coefficient as a
 * string owned by the caller.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum JpStatus jp_matpoly_get_str(const struct JpMatPoly *h,
                                 size_t s,
                                 size_t i,
                                 size_t j,
                                 char **out);

/**
 * The handle in `matpoly` text format.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum JpStatus jp_matpoly_to_string(const struct JpMatPoly *h, char **out);

/**
 * Whether `AB = BA` in the truncated ring.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum JpStatus jp_commutes(const struct JpMatPoly *a, const struct JpMatPoly *b, bool *out);

/**
 * Dimension of the commutant of `A(t)`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum JpStatus jp_commutant_dim(const struct JpMatPoly *a, size_t *out);

/**
 * Tangent dimension of the jet scheme at a commuting pair.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum JpStatus jp_tangent_dim(const struct JpMatPoly *a, const struct JpMatPoly *b, size_t *out);

/**
 * Solves for the next coefficient of `B` given the next coefficient of
 * `A` (a handle of order 0). Returns a new order-0 handle.
 *
 * # Safety
 * Inputs must be live handles and `out` a valid pointer.
 */
enum JpStatus jp_lift(const struct JpMatPoly *a,
                      const struct JpMatPoly *b,
                      const struct JpMatPoly *a_next,
                      struct JpMatPoly **out);

/**
 * Dimension bounds for the block shape `(a, a, a, b)` at order `k`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JpStatus jp_red_bounds(uint64_t a, uint64_t b, uint64_t k, struct JpBounds *out);

/**
 * `mu_k`, `beta_k` and `N(k)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JpStatus jp_red_thresholds(uint64_t k, struct JpThresholds *out);

/**
 * Generators of the jet ideal as text in the chosen flavor.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum JpStatus jp_export_ideal(uint64_t characteristic, size_t n, size_t k, int flavor, char **out);

/**
 * Closure certificate for a commuting `3 x 3` pair. Writes the certificate
 * text and its terminal kind (`JP_TERMINAL_*`).
 *
 * # Safety
 * `a`, `b` must be live handles; output pointers must be valid.
 */
enum JpStatus jp_certify(const struct JpMatPoly *a,
                         const struct JpMatPoly *b,
                         uint64_t seed,
                         char **out_text,
                         int *out_terminal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETPAIRS_H */
