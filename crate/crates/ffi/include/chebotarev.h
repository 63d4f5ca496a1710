#ifndef CHEBOTAREV_H
#define CHEBOTAREV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum ChebStatus {
  CHEB_STATUS_OK = 0,
  CHEB_STATUS_NULL_POINTER = 1,
  CHEB_STATUS_INVALID_ARGUMENT = 2,
  CHEB_STATUS_NOT_DIVISIBLE = 3,
  CHEB_STATUS_THEOREM_VIOLATION = 4,
  CHEB_STATUS_INCONSISTENT = 5,
  CHEB_STATUS_TOO_LARGE = 6,
  CHEB_STATUS_PARSE = 7,
  CHEB_STATUS_PANIC = 8,
} ChebStatus;

/**
 * Opaque element of Z[ω].
 */
typedef struct ChebCycInt ChebCycInt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string. Do not free.
 */
const char *cheb_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread. Do not free.
 */
const char *cheb_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cheb_string_free(char *s);

/**
 * Builds an element from `p - 1` coefficients in the basis `1, ω, …, ω^(p-2)`.
 *
 * # Safety
 * `coeffs` must point to `len` readable values; `out_handle` must be writable.
 */
enum ChebStatus cheb_cycint_from_i64(uint64_t p,
                                     const int64_t *coeffs,
                                     size_t len,
                                     struct ChebCycInt **out_handle);

/**
 * Parses a JSON array of `p - 1` decimal coefficient strings.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out_handle` must be writable.
 */
enum ChebStatus cheb_cycint_from_json(uint64_t p, const char *json, struct ChebCycInt **out_handle);

/**
 * Serializes an element as a JSON array of coefficient strings.
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be writable.
 */
enum ChebStatus cheb_cycint_to_json(const struct ChebCycInt *h, char **out_json);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void cheb_cycint_free(struct ChebCycInt *h);

/**
 * # Safety
 * `a` and `b` must be live handles; `out_handle` must be writable.
 */
enum ChebStatus cheb_cycint_add(const struct ChebCycInt *a,
                                const struct ChebCycInt *b,
                                struct ChebCycInt **out_handle);

/**
 * # Safety
 * `a` and `b` must be live handles; `out_handle` must be writable.
 */
enum ChebStatus cheb_cycint_mul(const struct ChebCycInt *a,
                                const struct ChebCycInt *b,
                                struct ChebCycInt **out_handle);

/**
 * Image of the element in `Z[ω]/(1 - ω) = F_p`, in `0..p`.
 *
 * # Safety
 * `h` must be a live handle; `out_residue` must be writable.
 */
enum ChebStatus cheb_cycint_reduce(const struct ChebCycInt *h, uint64_t *out_residue);

/**
 * Exact quotient by `1 - ω`; fails with `NotDivisible` outside the kernel.
 *
 * # Safety
 * `h` must be a live handle; `out_handle` must be writable.
 */
enum ChebStatus cheb_cycint_divide_one_minus_omega(const struct ChebCycInt *h,
                                                   struct ChebCycInt **out_handle);

/**
 * `(1 - ω)`-adic valuation; `-1` stands for the valuation of zero.
 *
 * # Safety
 * `h` must be a live handle; `out_valuation` must be writable.
 */
enum ChebStatus cheb_cycint_valuation(const struct ChebCycInt *h, int64_t *out_valuation);

/**
 * Determinant of the minor `(ω^(ij))` on rows `rows` and columns `cols`.
 *
 * # Safety
 * `rows` and `cols` must point to `n_rows` and `n_cols` readable values;
 * `out_handle` must be writable.
 */
enum ChebStatus cheb_minor_determinant(uint64_t p,
                                       const uint32_t *rows,
                                       size_t n_rows,
                                       const uint32_t *cols,
                                       size_t n_cols,
                                       struct ChebCycInt **out_handle);

/**
 * Exhaustive minor check; writes the JSON report. `size == 0` checks all sizes.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum ChebStatus cheb_verify_minors(uint64_t p,
                                   size_t size,
                                   size_t jobs,
                                   bool allow_large,
                                   char **out_json);

/**
 * Multiplicity of `root` in a polynomial over F_p and its non-zero
 * coefficient count; fails if the multiplicity is not below the count.
 *
 * # Safety
 * `coeffs` must point to `len` readable values; both out-pointers must be writable.
 */
enum ChebStatus cheb_root_multiplicity_bound(uint64_t p,
                                             const int64_t *coeffs,
                                             size_t len,
                                             int64_t root,
                                             size_t *out_multiplicity,
                                             size_t *out_nonzero_coeffs);

/**
 * Support sizes of a signal (`{"p":…,"values":[…]}`) and its transform, as JSON.
 *
 * # Safety
 * `signal_json` must be a nul-terminated string; `out_json` must be writable.
 */
enum ChebStatus cheb_uncertainty(const char *signal_json, char **out_json);

/**
 * Recovers the signal with at most `k` non-zero values matching the
 * measurements (`{"p":…,"samples":[…],"values":[…]}`), as JSON.
 *
 * # Safety
 * `measurements_json` must be a nul-terminated string; `out_json` must be writable.
 */
enum ChebStatus cheb_recover(const char *measurements_json, size_t k, char **out_json);

/**
 * Step-by-step kernel argument for coefficients (`{"p":…,"terms":{…}}`) on
 * the given rows, as JSON.
 *
 * # Safety
 * `rows` must point to `n_rows` readable values, `coeffs_json` must be a
 * nul-terminated string, and `out_json` must be writable.
 */
enum ChebStatus cheb_proof_trace(const uint32_t *rows,
                                 size_t n_rows,
                                 const char *coeffs_json,
                                 char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CHEBOTAREV_H */
