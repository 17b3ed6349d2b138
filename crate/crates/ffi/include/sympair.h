#ifndef SYMPAIR_H
#define SYMPAIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpMethod {
  SP_METHOD_CLOSED_FORM = 0,
  SP_METHOD_EXHAUSTIVE = 1,
  SP_METHOD_UPPER_BOUND = 2,
} SpMethod;

/**
 * Result of every fallible call. Values 1 to 19 mirror the library's error kinds.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NOT_PRIME = 1,
  SP_STATUS_REDUCIBLE_MODULUS = 2,
  SP_STATUS_DEGREE_MISMATCH = 3,
  SP_STATUS_FIELD_TOO_LARGE = 4,
  SP_STATUS_DIVISION_BY_ZERO = 5,
  SP_STATUS_FIELD_MISMATCH = 6,
  SP_STATUS_ZERO_ELEMENT = 7,
  SP_STATUS_NON_UNIT = 8,
  SP_STATUS_RING_MISMATCH = 9,
  SP_STATUS_EXPONENT_OUT_OF_RANGE = 10,
  SP_STATUS_ZERO_POLYNOMIAL = 11,
  SP_STATUS_CONSTRAINT_VIOLATION = 12,
  SP_STATUS_BETA_MISMATCH = 13,
  SP_STATUS_NOT_UNIT_NOR_ZERO = 14,
  SP_STATUS_NOT_CHAIN_CODE = 15,
  SP_STATUS_LENGTH_TOO_SHORT = 16,
  SP_STATUS_DEGENERATE_INPUT = 17,
  SP_STATUS_CONSTRUCTION_REFUSED = 18,
  SP_STATUS_PARSE = 19,
  SP_STATUS_NULL_POINTER = 100,
  SP_STATUS_INVALID_UTF8 = 101,
  SP_STATUS_BUDGET_EXCEEDED = 102,
  SP_STATUS_PANIC = 103,
} SpStatus;

/**
 * A code materialized inside a ring.
 */
typedef struct SpCode SpCode;

/**
 * A quotient ring `F` or `R`.
 */
typedef struct SpRing SpRing;

/**
 * Minimum distances of a code.
 */
typedef struct SpDistanceReport {
  uint64_t d_sp;
  uint64_t d_h;
  /**
   * Number of runs in the witness support, or -1 when undefined.
   */
  int64_t blocks;
  enum SpMethod method;
  uint64_t words_examined;
} SpDistanceReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *sp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sp_version(void);

/**
 * Builds a ring over GF(p^m) with the default modulus.
 *
 * `alpha0` and `beta` are comma-separated GF(p) digits, constant term first.
 * A null `alpha0` selects the first λ with `x^n − λ` irreducible. A null `beta`
 * gives the field quotient; otherwise the chain-ring quotient with that β.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out` must
 * be a valid pointer.
 */
enum SpStatus sp_ring_new(uint32_t p,
                          size_t m,
                          uint64_t n,
                          uint32_t s,
                          const char *alpha0,
                          const char *beta,
                          struct SpRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`sp_ring_new`] not yet freed.
 */
void sp_ring_free(struct SpRing *ring);

/**
 * Code length `n·p^s`, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t sp_ring_length(const struct SpRing *ring);

/**
 * Builds the code of a textual spec such as `"field-power:i=1"` or
 * `"type2:j=7,k=1,b=1"`.
 *
 * # Safety
 * `ring` must be a live handle, `spec` a valid NUL-terminated string and
 * `out` a valid pointer.
 */
enum SpStatus sp_code_new(const struct SpRing *ring, const char *spec, struct SpCode **out);

/**
 * # Safety
 * `code` must be null or a handle from [`sp_code_new`] not yet freed.
 */
void sp_code_free(struct SpCode *code);

/**
 * Dimension over GF(p); the code has `p^dim` words. 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t sp_code_dim_p(const struct SpCode *code);

/**
 * Minimum distances by enumeration. Codes above `budget` words are sampled
 * and reported as [`SpMethod::UpperBound`] unless `exact` is set, in which
 * case the call fails with [`SpStatus::BudgetExceeded`].
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_code_distance(const struct SpCode *code,
                               uint64_t budget,
                               uint64_t seed,
                               bool exact,
                               struct SpDistanceReport *out);

/**
 * Closed-form distances of a code built from a spec.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_code_formula_distance(const struct SpCode *code, struct SpDistanceReport *out);

/**
 * Distance report as a JSON string; release it with [`sp_string_free`].
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum SpStatus sp_code_distance_json(const struct SpCode *code,
                                    uint64_t budget,
                                    uint64_t seed,
                                    char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sp_string_free(char *s);

/**
 * Symbol-pair weight of a word; symbol 0 is the zero symbol.
 *
 * # Safety
 * `word` must point to `len` readable values and `out` must be valid.
 */
enum SpStatus sp_pair_weight(const uint32_t *word, size_t len, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMPAIR_H */
