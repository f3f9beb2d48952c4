/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#ifndef QFIB_H
#define QFIB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QfibStatus {
  QFIB_STATUS_OK = 0,
  QFIB_STATUS_NULL_POINTER = 1,
  QFIB_STATUS_INVALID_UTF8 = 2,
  QFIB_STATUS_PARSE = 3,
  QFIB_STATUS_INVALID_ARGUMENT = 4,
  QFIB_STATUS_CEILING_EXCEEDED = 5,
  QFIB_STATUS_INEXACT_DIVISION = 6,
  QFIB_STATUS_UNKNOWN_IDENTITY = 7,
  QFIB_STATUS_IDENTITY_FAILED = 8,
  QFIB_STATUS_ARITHMETIC = 9,
  QFIB_STATUS_PANIC = 10,
} QfibStatus;

typedef enum QfibVia {
  QFIB_VIA_RECURSION = 0,
  QFIB_VIA_ENUMERATION = 1,
} QfibVia;

typedef enum QfibMinorMethod {
  QFIB_MINOR_METHOD_COFACTOR = 0,
  QFIB_MINOR_METHOD_ALL_TUPLES = 1,
  QFIB_MINOR_METHOD_NONCROSSING_TUPLES = 2,
  QFIB_MINOR_METHOD_REDUCTION = 3,
} QfibMinorMethod;

typedef enum QfibProfile {
  QFIB_PROFILE_QUICK = 0,
  QFIB_PROFILE_FULL = 1,
} QfibProfile;

/*
 Opaque polynomial handle.
 */
typedef struct QfibPoly QfibPoly;

typedef struct QfibStats {
  uint64_t ls;
  uint64_t rb;
  uint64_t singletons;
  uint64_t doubletons;
  uint64_t blocks;
} QfibStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *qfib_version(void);

/*
 Message for the last failed call on this thread, or NULL. Valid until
 the next library call on the same thread.
 */
const char *qfib_last_error_message(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed once.
 */
void qfib_string_free(char *s);

/*
 # Safety
 `p` must be NULL or a handle returned by this library, freed once.
 */
void qfib_poly_free(struct QfibPoly *p);

/*
 Parses the canonical text form, e.g. `"x^2*q^-1 - 3*y"`.

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum QfibStatus qfib_poly_parse(const char *src, struct QfibPoly **out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable. Free the result with
 `qfib_string_free`.
 */
enum QfibStatus qfib_poly_to_string(const struct QfibPoly *p, char **out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum QfibStatus qfib_poly_clone(const struct QfibPoly *p, struct QfibPoly **out);

/*
 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum QfibStatus qfib_poly_add(const struct QfibPoly *a,
                              const struct QfibPoly *b,
                              struct QfibPoly **out);

/*
 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum QfibStatus qfib_poly_sub(const struct QfibPoly *a,
                              const struct QfibPoly *b,
                              struct QfibPoly **out);

/*
 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum QfibStatus qfib_poly_mul(const struct QfibPoly *a,
                              const struct QfibPoly *b,
                              struct QfibPoly **out);

/*
 `a / b` when `b` divides `a` exactly; `QFIB_STATUS_INEXACT_DIVISION`
 otherwise.

 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum QfibStatus qfib_poly_exact_div(const struct QfibPoly *a,
                                    const struct QfibPoly *b,
                                    struct QfibPoly **out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum QfibStatus qfib_poly_invert_q(const struct QfibPoly *p, struct QfibPoly **out);

/*
 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
enum QfibStatus qfib_poly_equal(const struct QfibPoly *a, const struct QfibPoly *b, bool *out);

/*
 Member `n` of a family (`"A"`, `"F"`, `"Fxyq"`, `"FK"`, `"FC"`,
 `"Fxypq"`) with `x, y` scaled by `q^q_shift p^p_shift`.

 # Safety
 `family` must be a NUL-terminated string; `out` must be writable.
 */
enum QfibStatus qfib_family_poly(const char *family,
                                 uint32_t n,
                                 uint32_t q_shift,
                                 uint32_t p_shift,
                                 enum QfibVia via,
                                 struct QfibPoly **out);

/*
 Gaussian binomial `[n, k]_q`.

 # Safety
 `out` must be writable.
 */
enum QfibStatus qfib_qbinom(int64_t n, int64_t k, struct QfibPoly **out);

/*
 p,q-binomial `[n, k]_{p,q}`.

 # Safety
 `out` must be writable.
 */
enum QfibStatus qfib_pqbinom(int64_t n, int64_t k, struct QfibPoly **out);

/*
 Statistics of a set partition given in slash form, e.g. `"12/3/45"`.

 # Safety
 `partition` must be a NUL-terminated string; `out` must be writable.
 */
enum QfibStatus qfib_partition_stats(const char *partition, struct QfibStats *out);

/*
 Number of partitions of `[n]` avoiding every pattern in `patterns`
 (separated by `,` or `;`, e.g. `"13/2,123"`).

 # Safety
 `patterns` must be a NUL-terminated string; `out` must be writable.
 */
enum QfibStatus qfib_count_avoiders(uint32_t n, const char *patterns, uint64_t *out);

/*
 The minor with rows `rows[0..k]` and columns `cols[0..k]` of the matrix
 whose `(r, c)` entry is `F_{c-r}(xq^r, yq^r, q)`.

 # Safety
 `rows` and `cols` must point to `k` readable values; `out` must be
 writable.
 */
enum QfibStatus qfib_minor(const size_t *rows,
                           const size_t *cols,
                           size_t k,
                           enum QfibMinorMethod method,
                           struct QfibPoly **out);

/*
 Checks one registered identity over its domain for `profile`.

 Writes the report as JSON to `report_json` (free with
 `qfib_string_free`) whenever the identity could be run. Returns
 `QFIB_STATUS_OK` for a pass or an empty domain and
 `QFIB_STATUS_IDENTITY_FAILED` for a counterexample.

 # Safety
 `key` must be a NUL-terminated string; `report_json` must be writable.
 */
enum QfibStatus qfib_verify_identity(const char *key, enum QfibProfile profile, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFIB_H */
