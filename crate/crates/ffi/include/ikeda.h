#ifndef IKEDA_H
#define IKEDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every fallible function.
typedef enum IkedaStatus {
  IKEDA_STATUS_OK = 0,
  // A required pointer argument was null.
  IKEDA_STATUS_NULL_POINTER = 1,
  // Parameters outside the supported domain, or a malformed string.
  IKEDA_STATUS_INVALID_ARGUMENT = 2,
  // An exact check failed: route disagreement, non-integral coefficient,
  // Deligne violation or an inconsistent eigenform table.
  IKEDA_STATUS_CHECK_FAILED = 3,
  // An eigenform table could not be read.
  IKEDA_STATUS_IO = 4,
  // A panic was caught at the boundary.
  IKEDA_STATUS_INTERNAL = 5,
} IkedaStatus;

// Which construction computes `λ_F(p)`.
typedef enum IkedaRoute {
  IKEDA_ROUTE_SUM = 0,
  IKEDA_ROUTE_FACTORED = 1,
  IKEDA_ROUTE_RECIPROCAL = 2,
} IkedaRoute;

// Fourier coefficients of a normalized Hecke eigenform.
typedef struct IkedaEigenform IkedaEigenform;

// Validated `(n, k)` lift parameters.
typedef struct IkedaParams IkedaParams;

// Verification outcome at a single prime.
typedef struct IkedaReport IkedaReport;

// Message for the most recent failure on this thread, or an empty string.
// The pointer stays valid until the next call into this library.
const char *ikeda_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ikeda_string_free(char *s);

// Validates `(n, k)` and stores a new handle in `*out`.
//
// # Safety
// `out` must be valid for writes.
enum IkedaStatus ikeda_params_new(int64_t n, int64_t k, struct IkedaParams **out);

// # Safety
// `params` must be null or a handle from [`ikeda_params_new`] not yet freed.
void ikeda_params_free(struct IkedaParams *params);

// Weight `2k - n` of the eigenform the lift is built from, or 0 for null.
//
// # Safety
// `params` must be null or a live handle.
uint32_t ikeda_params_eigenform_weight(const struct IkedaParams *params);

// Built-in eigenform of `weight` with coefficients `a(0..=truncation)`.
//
// # Safety
// `out` must be valid for writes.
enum IkedaStatus ikeda_eigenform_builtin(uint32_t weight,
                                         size_t truncation,
                                         struct IkedaEigenform **out);

// Reads and validates a coefficient table (`m a(m)` per line).
//
// # Safety
// `path` must be a NUL-terminated string and `out` valid for writes.
enum IkedaStatus ikeda_eigenform_load(const char *path,
                                      uint32_t weight,
                                      struct IkedaEigenform **out);

// # Safety
// `form` must be null or a handle not yet freed.
void ikeda_eigenform_free(struct IkedaEigenform *form);

// Largest index `m` with a known coefficient, or 0 for null.
//
// # Safety
// `form` must be null or a live handle.
size_t ikeda_eigenform_truncation(const struct IkedaEigenform *form);

// Coefficient `a(m)` as a decimal string.
//
// # Safety
// `form` must be a live handle and `out` valid for writes.
enum IkedaStatus ikeda_eigenform_coeff(const struct IkedaEigenform *form, size_t m, char **out);

// `λ_F(p)` at `a_f(p) = ap` by the chosen route, as a decimal string.
//
// # Safety
// `params` must be a live handle, `ap` a NUL-terminated decimal string and
// `out` valid for writes.
enum IkedaStatus ikeda_lambda(const struct IkedaParams *params,
                              uint64_t p,
                              const char *ap,
                              enum IkedaRoute route,
                              char **out);

// Verifies `λ_F(p)` with `a_f(p)` read from `form`.
//
// # Safety
// `params` and `form` must be live handles and `out` valid for writes.
enum IkedaStatus ikeda_verify_prime(const struct IkedaParams *params,
                                    const struct IkedaEigenform *form,
                                    uint64_t p,
                                    struct IkedaReport **out);

// # Safety
// `report` must be null or a handle not yet freed.
void ikeda_report_free(struct IkedaReport *report);

// True when the routes agree and `λ_F(p)` is positive and within bounds.
//
// # Safety
// `report` must be null or a live handle.
bool ikeda_report_passed(const struct IkedaReport *report);

// `λ_F(p)` as a decimal string.
//
// # Safety
// `report` must be a live handle and `out` valid for writes.
enum IkedaStatus ikeda_report_lambda(const struct IkedaReport *report, char **out);

// Lower and upper bounds truncated to `digits` decimals.
//
// # Safety
// `report` must be a live handle; `lower` and `upper` valid for writes.
enum IkedaStatus ikeda_report_bounds(const struct IkedaReport *report,
                                     size_t digits,
                                     char **lower,
                                     char **upper);

// Gaussian binomial `[n m]_q`, rendered as a polynomial in `q`.
//
// # Safety
// `out` must be valid for writes.
enum IkedaStatus ikeda_qbinomial(int64_t n, int64_t m, char **out);

#endif  /* IKEDA_H */
