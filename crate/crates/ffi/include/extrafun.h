#ifndef EXTRAFUN_H
#define EXTRAFUN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum ExfStatus {
  EXF_STATUS_OK = 0,
  EXF_STATUS_SYNTAX = 1,
  EXF_STATUS_DOMAIN = 2,
  EXF_STATUS_SHAPE = 3,
  EXF_STATUS_FAMILY_MISMATCH = 4,
  EXF_STATUS_OUT_OF_DOMAIN = 5,
  EXF_STATUS_UNDEFINED_DERIVATIVE = 6,
  EXF_STATUS_NON_DIFFERENTIABLE = 7,
  EXF_STATUS_NOT_SEPARABLE = 8,
  EXF_STATUS_ZERO_SCALAR = 9,
  EXF_STATUS_INVALID_ARGUMENT = 10,
  EXF_STATUS_NULL_POINTER = 11,
  EXF_STATUS_INVALID_UTF8 = 12,
  EXF_STATUS_PANIC = 13,
} ExfStatus;

/**
 * Three-valued outcome of a decision.
 */
typedef enum ExfVerdict {
  EXF_VERDICT_HOLDS = 0,
  EXF_VERDICT_FAILS = 1,
  EXF_VERDICT_INCONCLUSIVE = 2,
} ExfVerdict;

/**
 * A parsed expression in `x` and `n`.
 */
typedef struct ExfExpr ExfExpr;

/**
 * A seminorm family.
 */
typedef struct ExfFamily ExfFamily;

/**
 * A function sequence.
 */
typedef struct ExfSeq ExfSeq;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *exf_last_error(void);

/**
 * Library version as a static string.
 */
const char *exf_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void exf_string_free(char *s);

/**
 * Parses `src` into a new expression.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum ExfStatus exf_expr_parse(const char *src, struct ExfExpr **out);

/**
 * Evaluates `e` at `(x, n)`.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum ExfStatus exf_expr_eval(const struct ExfExpr *e, double x, uint64_t n, double *out);

/**
 * Symbolic derivative with respect to `x`, as a new expression.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
enum ExfStatus exf_expr_differentiate(const struct ExfExpr *e, struct ExfExpr **out);

/**
 * Source text of `e`; release with [`exf_string_free`]. Null on a null
 * handle.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
char *exf_expr_to_string(const struct ExfExpr *e);

/**
 * # Safety
 * `e` must be null or a handle not yet freed.
 */
void exf_expr_free(struct ExfExpr *e);

/**
 * Point evaluations at `points[0..len]`.
 *
 * # Safety
 * `points` must hold `len` values; `out` must be writable.
 */
enum ExfStatus exf_family_pointwise(const double *points, size_t len, struct ExfFamily **out);

/**
 * Grid sups over `count` intervals given as `[a0, b0, a1, b1, ...]`. A
 * `grid` of 0 selects the default.
 *
 * # Safety
 * `bounds` must hold `2 * count` values; `out` must be writable.
 */
enum ExfStatus exf_family_compact_sup(const double *bounds,
                                      size_t count,
                                      size_t grid,
                                      struct ExfFamily **out);

/**
 * The absolute value on numbers.
 *
 * # Safety
 * `out` must be writable.
 */
enum ExfStatus exf_family_abs(struct ExfFamily **out);

/**
 * Largest seminorm of `e` at index `n` over the family.
 *
 * # Safety
 * `q` and `e` must be live handles; `out` must be writable.
 */
enum ExfStatus exf_family_sup(const struct ExfFamily *q,
                              const struct ExfExpr *e,
                              uint64_t n,
                              double *out);

/**
 * # Safety
 * `q` must be null or a handle not yet freed.
 */
void exf_family_free(struct ExfFamily *q);

/**
 * The sequence whose i-th term is `src` with `n = i`.
 *
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum ExfStatus exf_seq_parse(const char *src, struct ExfSeq **out);

/**
 * The sequence `heads[0], ..., heads[len-1], tail, tail, ...`.
 *
 * # Safety
 * `heads` must hold `len` strings; `tail` must be a nul-terminated string;
 * `out` must be writable.
 */
enum ExfStatus exf_seq_list(const char *const *heads,
                            size_t len,
                            const char *tail,
                            struct ExfSeq **out);

/**
 * Value of term `i` at `x`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum ExfStatus exf_seq_eval(const struct ExfSeq *f, uint64_t i, double x, double *out);

/**
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void exf_seq_free(struct ExfSeq *f);

/**
 * Decides `f ~ g` under `q` on the window `start..=end` with tolerance
 * `epsilon`.
 *
 * # Safety
 * `f`, `g` and `q` must be live handles; `out` must be writable.
 */
enum ExfStatus exf_equivalent(const struct ExfSeq *f,
                              const struct ExfSeq *g,
                              const struct ExfFamily *q,
                              uint64_t start,
                              uint64_t end,
                              double epsilon,
                              enum ExfVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXTRAFUN_H */
