#ifndef ALTGEN_H
#define ALTGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AltgenStatus {
  ALTGEN_STATUS_OK = 0,
  ALTGEN_STATUS_NULL_POINTER = 1,
  ALTGEN_STATUS_INVALID_ARGUMENT = 2,
  ALTGEN_STATUS_COMPUTATION = 3,
  ALTGEN_STATUS_PANIC = 4,
} AltgenStatus;

/**
 * Opaque engine handle; owns the slice memo.
 */
typedef struct AltgenEngine AltgenEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *altgen_last_error(void);

/**
 * New engine with the two primes derived from `seed`. A nonzero
 * `projected` selects the sub-staircase slice model. Null on failure.
 */
struct AltgenEngine *altgen_engine_new(uint64_t seed, int32_t projected);

/**
 * # Safety
 * `engine` must be null or a pointer from [`altgen_engine_new`] not yet freed.
 */
void altgen_engine_free(struct AltgenEngine *engine);

/**
 * `dim M_{d1,d2}` for `n` points.
 *
 * # Safety
 * `engine` must be a live engine and `out` writable.
 */
enum AltgenStatus altgen_dim_m(const struct AltgenEngine *engine,
                               uint32_t n,
                               uint32_t d1,
                               uint32_t d2,
                               uint64_t *out);

/**
 * Coefficient of `q^d1 t^d2` in `C_n(q,t)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AltgenStatus altgen_qt_coefficient(uint32_t n, uint32_t d1, uint32_t d2, uint64_t *out);

/**
 * `C_n(q,t)` as JSON `{"n":..,"coeffs":[[d1,d2,c],..]}`; free with
 * [`altgen_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum AltgenStatus altgen_qt_json(uint32_t n, char **out);

/**
 * Spanning check of the `Δ(D(λ))` generators. Writes 1 to `passed` on
 * PASS and 0 on FAIL; `report_json` may be null, otherwise it receives
 * the full report to free with [`altgen_string_free`].
 *
 * # Safety
 * `engine` must be a live engine, `passed` writable, and `report_json`
 * null or writable.
 */
enum AltgenStatus altgen_conj41(const struct AltgenEngine *engine,
                                uint32_t n,
                                int32_t *passed,
                                char **report_json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void altgen_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALTGEN_H */
