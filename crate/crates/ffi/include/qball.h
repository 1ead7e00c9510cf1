/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef QBALL_H
#define QBALL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by all functions.
typedef enum QballStatus {
  QBALL_STATUS_OK = 0,
  QBALL_STATUS_NULL_POINTER = 1,
  QBALL_STATUS_INVALID_ARGUMENT = 2,
  QBALL_STATUS_COMPUTATION_FAILED = 3,
  QBALL_STATUS_VERIFICATION_FAILED = 4,
  QBALL_STATUS_BUFFER_TOO_SMALL = 5,
  QBALL_STATUS_PANIC = 6,
} QballStatus;

// Opaque handle to an expanded kernel series.
typedef struct QballSeries QballSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library as a static NUL-terminated string.
const char *qball_version(void);

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next call into the library from the same thread.
const char *qball_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library that has not been freed.
void qball_string_free(char *s);

// Expands the Bergman kernel of the `m × n` ball up to `degree`.
//
// `lambda` is NULL or "formal" for formal λ, or a rational with integer
// `2λ`. With `ordinary` set the finite product at λ = m+n is used and
// `lambda` must be NULL.
//
// # Safety
// `lambda` must be NULL or a valid C string; `out` must be a valid pointer.
enum QballStatus qball_series_expand(uintptr_t m,
                                     uintptr_t n,
                                     uintptr_t degree,
                                     const char *lambda,
                                     bool ordinary,
                                     struct QballSeries **out);

// # Safety
// `series` must be NULL or a handle from [`qball_series_expand`] that has not been freed.
void qball_series_free(struct QballSeries *series);

// Highest degree held by the series, or 0 for NULL.
//
// # Safety
// `series` must be NULL or a live handle.
uintptr_t qball_series_degree(const struct QballSeries *series);

// Number of nonzero `z ⊗ z̄` terms in the degree-`d` component, or 0 when out of range.
//
// # Safety
// `series` must be NULL or a live handle.
uintptr_t qball_series_term_count(const struct QballSeries *series, uintptr_t d);

// Writes the JSON form of the series to `*out`.
//
// # Safety
// `series` must be a live handle and `out` a valid pointer.
enum QballStatus qball_series_to_json(const struct QballSeries *series, char **out);

// Evaluates the degree-`d` coefficient matrix at `q` and `u = q^{2λ}` into a
// row-major `double` buffer. `*dim` receives the matrix size; when
// `capacity < dim²` nothing is written and `BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `series` must be a live handle, `q` and `lambda` valid C strings, `dim` a
// valid pointer and `buf` valid for `capacity` writes (or NULL with capacity 0).
enum QballStatus qball_series_coefficient_matrix(const struct QballSeries *series,
                                                 uintptr_t d,
                                                 const char *q,
                                                 const char *lambda,
                                                 double *buf,
                                                 uintptr_t capacity,
                                                 uintptr_t *dim);

// Gram matrices of degrees `0..=degree` as JSON (same document as `qball gram`).
// `tolerance` may be NULL for the default.
//
// # Safety
// String arguments must be NULL or valid C strings; `out` must be a valid pointer.
enum QballStatus qball_gram_json(uintptr_t m,
                                 uintptr_t n,
                                 uintptr_t degree,
                                 const char *lambda,
                                 const char *q,
                                 const char *tolerance,
                                 char **out);

// Runs a verification suite ("algebra", "fock", "kernels", "crosscheck" or
// "all") and writes the JSON report. Returns `VERIFICATION_FAILED` when a
// check fails; the report is written either way.
//
// # Safety
// String arguments must be NULL or valid C strings; `out` must be a valid pointer.
enum QballStatus qball_verify(const char *suite,
                              uintptr_t m,
                              uintptr_t n,
                              uintptr_t degree,
                              const char *lambda,
                              const char *q,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QBALL_H */
