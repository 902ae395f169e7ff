#ifndef WFLAG_H
#define WFLAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success; the library error kinds follow.
typedef enum WflagStatus {
  WFLAG_STATUS_OK = 0,
  WFLAG_STATUS_VALIDATION = 1,
  WFLAG_STATUS_INTEGRALITY = 2,
  WFLAG_STATUS_RESOURCE = 3,
  WFLAG_STATUS_INTERNAL = 4,
  WFLAG_STATUS_DIMENSION_MISMATCH = 5,
  WFLAG_STATUS_CONVENTION = 6,
  WFLAG_STATUS_PERIOD_TOO_SMALL = 7,
  WFLAG_STATUS_ILL_POSED = 8,
  WFLAG_STATUS_PARSE = 9,
  WFLAG_STATUS_NULL_POINTER = 10,
  WFLAG_STATUS_INVALID_UTF8 = 11,
  WFLAG_STATUS_BUFFER_TOO_SMALL = 12,
  WFLAG_STATUS_PANIC = 13,
} WflagStatus;

// A weighted flag variety with the cones and sections applied so far.
typedef struct WflagVariety WflagVariety;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *wflag_version(void);

// Message of the last failed call on this thread, or NULL. Valid until the
// next call into the library on the same thread.
const char *wflag_last_error(void);

// Builds `wSigma(mu, u)` for catalog entry `id`.
//
// # Safety
// `id` must be a NUL-terminated string, `mu` must point to `mu_len` values
// (it may be NULL when `mu_len` is 0, meaning the zero coweight) and `out`
// must be writable.
enum WflagStatus wflag_variety_new(const char *id,
                                   const int64_t *mu,
                                   size_t mu_len,
                                   int64_t u,
                                   struct WflagVariety **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `v` must come from `wflag_variety_new` and not have been freed.
void wflag_variety_free(struct WflagVariety *v);

// Applies comma-separated operations such as `"cone:1,section:2"` in place.
// The handle is unchanged when any operation fails.
//
// # Safety
// `v` must be a live handle and `ops` a NUL-terminated string.
enum WflagStatus wflag_variety_apply(struct WflagVariety *v, const char *ops);

// # Safety
// `v` must be a live handle and `out` writable.
enum WflagStatus wflag_variety_dim(const struct WflagVariety *v, size_t *out);

// Degree `k` of the canonical class `O(k)`.
//
// # Safety
// `v` must be a live handle and `out` writable.
enum WflagStatus wflag_variety_canonical_degree(const struct WflagVariety *v, int64_t *out);

// Copies the ambient weights into `buf`. `len` receives the number of
// weights; pass `buf = NULL` to query it. Returns `BufferTooSmall` when
// `capacity` is short.
//
// # Safety
// `v` must be a live handle, `len` writable and `buf`, when non-NULL, must
// have room for `capacity` values.
enum WflagStatus wflag_variety_weights(const struct WflagVariety *v,
                                       int64_t *buf,
                                       size_t capacity,
                                       size_t *len);

// `D^dim` as a reduced fraction `num / den`.
//
// # Safety
// `v` must be a live handle; `num` and `den` writable.
enum WflagStatus wflag_variety_degree(const struct WflagVariety *v, int64_t *num, int64_t *den);

// Weights, numerator, canonical degree and invariants as JSON, with
// rationals written as "p/q" strings. Free the result with
// `wflag_string_free`.
//
// # Safety
// `v` must be a live handle and `out` writable.
enum WflagStatus wflag_variety_json(const struct WflagVariety *v, char **out);

// Runs a verification suite ("examples", "appendix", "compact" or "all") and
// reports the number of failed hard checks.
//
// # Safety
// `suite` must be a NUL-terminated string and `failures` writable.
enum WflagStatus wflag_verify(const char *suite, size_t *failures);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void wflag_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WFLAG_H */
