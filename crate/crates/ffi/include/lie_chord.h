#ifndef LIE_CHORD_H
#define LIE_CHORD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_INVALID_UTF8 = 2,
  LC_STATUS_MALFORMED_INPUT = 3,
  LC_STATUS_DIMENSION_MISMATCH = 4,
  LC_STATUS_SINGULAR_MATRIX = 5,
  LC_STATUS_NOT_SEMISIMPLE = 6,
  LC_STATUS_BUDGET_EXCEEDED = 7,
  LC_STATUS_INVARIANT_VIOLATED = 8,
  LC_STATUS_PANIC = 9,
} LcStatus;

typedef enum LcVerdict {
  LC_VERDICT_DISTINCT = 0,
  LC_VERDICT_EQUAL_UP_TO = 1,
  LC_VERDICT_ISOMORPHY_CERTIFIED = 2,
} LcVerdict;

// Structure constants plus the inverse Killing form once computed.
typedef struct LcAlgebra LcAlgebra;

// Parses algebra JSON (`{"n": .., "mu": [[i, j, k, "p/q"], ...]}`, 1-based, `i < j`).
//
// # Safety
// `json` must be a nul-terminated string; `out` must be valid for a write.
enum LcStatus lc_algebra_from_json(const char *json, struct LcAlgebra **out);

// Builds `sl(m)`, `so(m)` or `sp(m)`; `family` is `"sl"`, `"so"` or `"sp"`.
//
// # Safety
// `family` must be a nul-terminated string; `out` must be valid for a write.
enum LcStatus lc_algebra_classical(const char *family, uint32_t m, struct LcAlgebra **out);

// # Safety
// `a` and `b` must be live handles; `out` must be valid for a write.
enum LcStatus lc_algebra_direct_sum(const struct LcAlgebra *a,
                                    const struct LcAlgebra *b,
                                    struct LcAlgebra **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `a` must be null or a handle not yet freed.
void lc_algebra_free(struct LcAlgebra *a);

// Dimension of the algebra, or 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t lc_algebra_dim(const struct LcAlgebra *a);

// # Safety
// `a` must be a live handle; `out` must be valid for a write.
enum LcStatus lc_algebra_to_json(const struct LcAlgebra *a, char **out);

// # Safety
// `a` must be a live handle; `out` must be valid for a write.
enum LcStatus lc_algebra_is_semisimple(struct LcAlgebra *a, bool *out);

// Exact value of a chord diagram (`"1-3,2-4"`), written as `"p/q"` or `"p"`.
//
// # Safety
// `a` must be a live handle, `diagram` a nul-terminated string and `out`
// valid for a write. Free the result with [`lc_string_free`].
enum LcStatus lc_eval_diagram(struct LcAlgebra *a, const char *diagram, char **out);

// Double-precision value of a chord diagram.
//
// # Safety
// `a` must be a live handle, `diagram` a nul-terminated string and `out`
// valid for a write.
enum LcStatus lc_eval_diagram_f64(struct LcAlgebra *a, const char *diagram, double *out);

// Compares all diagrams with up to `max_chords` chords.
//
// On `LC_VERDICT_DISTINCT`, `witness` (if not null) receives the
// distinguishing diagram; otherwise it receives null.
//
// # Safety
// `a`, `b` must be live handles; `verdict` must be valid for a write;
// `witness` may be null.
enum LcStatus lc_compare(const struct LcAlgebra *a,
                         const struct LcAlgebra *b,
                         uint32_t max_chords,
                         enum LcVerdict *verdict,
                         char **witness);

// The chord-count bound `k(n)` as an exact rational string.
//
// # Safety
// `out` must be valid for a write. Free the result with [`lc_string_free`].
enum LcStatus lc_theorem_bound(uint64_t n, char **out);

// Reduces picture JSON to a combination of chord diagrams, one term per
// line (`coeff [D1] [D2] ...`).
//
// # Safety
// `json` must be a nul-terminated string; `out` must be valid for a write.
enum LcStatus lc_reduce_picture(const char *json, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void lc_string_free(char *s);

// Message of the last failed call on this thread (empty after a success).
// Valid until the next call into the library on this thread.
const char *lc_last_error_message(void);

// Static name of a status code, such as `"not_semisimple"`.
const char *lc_status_name(enum LcStatus status);

#endif  /* LIE_CHORD_H */
