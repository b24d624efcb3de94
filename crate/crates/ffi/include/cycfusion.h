#ifndef CYCFUSION_H
#define CYCFUSION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfStatus {
  CF_STATUS_OK = 0,
  /**
   * Some asserted verdict failed; the report is still returned.
   */
  CF_STATUS_REFUTED = 1,
  CF_STATUS_NULL_POINTER = 2,
  CF_STATUS_INVALID_ARGUMENT = 3,
  CF_STATUS_NOT_PRIME = 4,
  CF_STATUS_FIELD_TOO_LARGE = 5,
  CF_STATUS_INDEX_OUT_OF_RANGE = 6,
  CF_STATUS_NOT_COPRIME = 7,
  CF_STATUS_INTERNAL = 8,
} CfStatus;

/**
 * Opaque handle to a materialized GF(p^f).
 */
typedef struct CfField CfField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *cf_last_error(void);

/**
 * Builds GF(p^f) with the canonical modulus.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CfStatus cf_field_new(uint64_t p, uint64_t f, struct CfField **out);

/**
 * # Safety
 * `field` must come from `cf_field_new` and not be freed twice. Null is a no-op.
 */
void cf_field_free(struct CfField *field);

/**
 * Number of elements `q`, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t cf_field_order(const struct CfField *field);

/**
 * `Tr(γ^n)` as an integer in `0..p`.
 *
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum CfStatus cf_field_trace(const struct CfField *field, uint32_t n, uint32_t *out);

/**
 * Discrete log of `γ^{n1} + γ^{n2}`; `*is_zero` is set when the sum is 0, in
 * which case `*out` is left untouched.
 *
 * # Safety
 * `field` must be a live handle; `out` and `is_zero` writable.
 */
enum CfStatus cf_field_zech_add(const struct CfField *field,
                                uint32_t n1,
                                uint32_t n2,
                                uint32_t *out,
                                bool *is_zero);

/**
 * Multiplicative order of `a` modulo `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CfStatus cf_mult_order(uint64_t a, uint64_t n, uint64_t *out);

/**
 * Class number of `Q(sqrt(-d))` for squarefree `d > 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CfStatus cf_class_number(uint64_t d, uint64_t *out);

/**
 * Runs the full verification of a family member (`"A:p,p1,p2"` or
 * `"B:p,p1"`) and hands back the JSON report. Returns `Ok` when every
 * verdict holds and `Refuted` otherwise; in both cases `*json_out` owns a
 * string to be released with `cf_string_free`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `json_out` writable.
 */
enum CfStatus cf_verify_family(const char *family, uint32_t m, char **json_out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is a no-op.
 */
void cf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCFUSION_H */
