#ifndef QUANDLEKIT_H
#define QUANDLEKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Values 2 to 5 agree with the command-line exit codes.
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_INVALID_ARGUMENT = 2,
  QK_STATUS_PARSE = 3,
  QK_STATUS_AXIOM_VIOLATION = 4,
  QK_STATUS_CAPACITY = 5,
  QK_STATUS_PANIC = 6,
} QkStatus;

// Opaque quandle handle.
typedef struct QkQuandle QkQuandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. Valid until the next
// failing call on the same thread; do not free.
const char *qk_last_error(void);

// Static description of a status code.
const char *qk_status_str(enum QkStatus status);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void qk_string_free(char *s);

// # Safety
// `q` must be null or a handle returned by this library, not yet freed.
void qk_quandle_free(struct QkQuandle *q);

// Dihedral quandle `R_n` on `Z_n`.
//
// # Safety
// `out` must be valid for writing a handle.
enum QkStatus qk_quandle_dihedral(size_t n, struct QkQuandle **out);

// Trivial quandle of order `n`.
//
// # Safety
// `out` must be valid for writing a handle.
enum QkStatus qk_quandle_trivial(size_t n, struct QkQuandle **out);

// Alexander quandle on `Z_n` with parameter `t`.
//
// # Safety
// `out` must be valid for writing a handle.
enum QkStatus qk_quandle_alexander(size_t n, int64_t t, struct QkQuandle **out);

// Builds a quandle from a row-major `n × n` table with entry `(i, j) = i ▷ j`.
//
// # Safety
// `table` must point to `n * n` readable values and `out` must be valid for
// writing a handle.
enum QkStatus qk_quandle_from_table(size_t n, const uint32_t *table, struct QkQuandle **out);

// Parses `{"n": .., "table": [[..], ..]}`.
//
// # Safety
// `json` must be a nul-terminated string and `out` valid for writing a handle.
enum QkStatus qk_quandle_from_json(const char *json, struct QkQuandle **out);

// Serializes to the JSON table format; free the result with [`qk_string_free`].
//
// # Safety
// `q` must be a live handle and `out` valid for writing a pointer.
enum QkStatus qk_quandle_to_json(const struct QkQuandle *q, char **out);

// # Safety
// `q` must be a live handle and `out` valid for writing.
enum QkStatus qk_quandle_size(const struct QkQuandle *q, size_t *out);

// `i ▷ j`.
//
// # Safety
// `q` must be a live handle and `out` valid for writing.
enum QkStatus qk_quandle_op(const struct QkQuandle *q, size_t i, size_t j, size_t *out);

// Writes `λ_1, …, λ_n` (orbit counts by size) into `buf`, which must hold
// `len ≥ n` values.
//
// # Safety
// `q` must be a live handle and `buf` valid for `len` writes.
enum QkStatus qk_quandle_partition_type(const struct QkQuandle *q, size_t *buf, size_t len);

// Transitivity flags: `Inn(X)` 2-transitive on `X`, every orbit group
// 2-transitive on its orbit, and the left-translation semigroup
// 2-transitive on `X`.
//
// # Safety
// `q` must be a live handle; the out pointers must be valid for writing.
enum QkStatus qk_quandle_transitivity(const struct QkQuandle *q,
                                      bool *right,
                                      bool *right_orbit,
                                      bool *left);

// # Safety
// `x`, `y` must be live handles and `out` valid for writing.
enum QkStatus qk_quandles_isomorphic(const struct QkQuandle *x,
                                     const struct QkQuandle *y,
                                     bool *out);

// Whether the default coefficient box over the rationals contains an
// element violating power associativity.
//
// # Safety
// `q` must be a live handle and `out` valid for writing.
enum QkStatus qk_power_assoc_violated(const struct QkQuandle *q, bool *out);

// Number of isomorphism classes of quandles of order `n` (at most 6).
//
// # Safety
// `out` must be valid for writing.
enum QkStatus qk_enumerate_count(size_t n, size_t *out);

// `Δ^k/Δ^{k+1}` of the integral quandle ring of `q` under the default
// Δ-power, as a string such as `"Z ⊕ Z_4"`; free with [`qk_string_free`].
//
// # Safety
// `q` must be a live handle and `out` valid for writing a pointer.
enum QkStatus qk_delta_quotient(const struct QkQuandle *q, size_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUANDLEKIT_H */
