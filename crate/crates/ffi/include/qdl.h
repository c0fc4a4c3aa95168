#ifndef QDL_H
#define QDL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdlStatus {
  QDL_STATUS_OK = 0,
  QDL_STATUS_INVALID_ARGUMENT = 1,
  QDL_STATUS_NOT_ODD_SQUAREFREE = 2,
  QDL_STATUS_TABLE_LIMIT = 3,
  QDL_STATUS_POLE = 4,
  QDL_STATUS_MODULUS_TOO_LARGE = 5,
  QDL_STATUS_BUDGET = 6,
  QDL_STATUS_QUADRATURE = 7,
  QDL_STATUS_DEGENERATE_SCHEDULE = 8,
  QDL_STATUS_NUMERICAL = 9,
  QDL_STATUS_PARSE = 10,
  QDL_STATUS_IO = 11,
  QDL_STATUS_NULL_POINTER = 12,
  QDL_STATUS_PANIC = 13,
} QdlStatus;

/**
 * Opaque character `χ^(8d)`.
 */
typedef struct QdlChar QdlChar;

/**
 * Opaque prime table.
 */
typedef struct QdlPrimeTable QdlPrimeTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qdl_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qdl_version(void);

/**
 * Jacobi symbol `(a/n)` for odd `n > 0`.
 *
 * # Safety
 * `out_value` must be a valid pointer.
 */
enum QdlStatus qdl_jacobi(int64_t a, uint64_t n, int8_t *out_value);

/**
 * Number of odd square-free `d ≤ x`.
 *
 * # Safety
 * `out_count` must be a valid pointer.
 */
enum QdlStatus qdl_squarefree_odd_count(uint64_t x, uint64_t *out_count);

/**
 * Creates the character `χ^(8d)`; `d` must be odd and square-free.
 *
 * # Safety
 * `out_handle` must be a valid pointer.
 */
enum QdlStatus qdl_char_new(uint64_t d, struct QdlChar **out_handle);

/**
 * # Safety
 * `h` must be null or a handle from [`qdl_char_new`] not yet freed.
 */
void qdl_char_free(struct QdlChar *h);

/**
 * Modulus `8d`; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t qdl_char_modulus(const struct QdlChar *h);

/**
 * `χ(n)` in {−1, 0, 1}.
 *
 * # Safety
 * `h` must be a live handle and `out_value` a valid pointer.
 */
enum QdlStatus qdl_char_chi(const struct QdlChar *h, uint64_t n, int8_t *out_value);

/**
 * `L(s, χ)` by the routed evaluator.
 *
 * # Safety
 * `h` must be a live handle; output pointers valid.
 */
enum QdlStatus qdl_l_value(const struct QdlChar *h,
                           double re,
                           double im,
                           double *out_re,
                           double *out_im);

/**
 * Relative residual `|Λ(s) − Λ(1−s)| / |Λ(s)|`.
 *
 * # Safety
 * `h` must be a live handle; `out_residual` valid.
 */
enum QdlStatus qdl_functional_equation_residual(const struct QdlChar *h,
                                                double re,
                                                double im,
                                                double *out_residual);

/**
 * Sieves the primes up to `limit`.
 *
 * # Safety
 * `out_handle` must be a valid pointer.
 */
enum QdlStatus qdl_prime_table_new(uint64_t limit, struct QdlPrimeTable **out_handle);

/**
 * # Safety
 * `h` must be null or a handle from [`qdl_prime_table_new`] not yet freed.
 */
void qdl_prime_table_free(struct QdlPrimeTable *h);

/**
 * Number of primes in the table; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t qdl_prime_table_len(const struct QdlPrimeTable *h);

/**
 * `Σ_{p ≤ x} 1/p`.
 *
 * # Safety
 * `h` must be a live handle; `out_sum` valid.
 */
enum QdlStatus qdl_prime_sum_reciprocal(const struct QdlPrimeTable *h, double x, double *out_sum);

/**
 * `Σ_{p ≤ x} cos(α log p)/p`.
 *
 * # Safety
 * `h` must be a live handle; `out_sum` valid.
 */
enum QdlStatus qdl_prime_sum_cos(const struct QdlPrimeTable *h,
                                 double x,
                                 double alpha,
                                 double *out_sum);

/**
 * Riemann `ζ(s)` for `Re s > 0`.
 *
 * # Safety
 * Output pointers must be valid.
 */
enum QdlStatus qdl_zeta(double re, double im, double *out_re, double *out_im);

/**
 * Jutila moment `S_m(X, Y)`; nonzero `force` lifts the work budget.
 *
 * # Safety
 * `out_value` must be valid.
 */
enum QdlStatus qdl_jutila_moment(double x, double y, double m, int32_t force, double *out_value);

/**
 * `E(m, k, ε)`.
 *
 * # Safety
 * `out_value` must be valid.
 */
enum QdlStatus qdl_exponent_e(double m, uint32_t k, double eps, double *out_value);

/**
 * `g(x)` at family size `X`.
 *
 * # Safety
 * `out_value` must be valid.
 */
enum QdlStatus qdl_g_function(double x, double big_x, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDL_H */
