#ifndef ZETAPROD_H
#define ZETAPROD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZpStatus {
  ZP_STATUS_OK = 0,
  ZP_STATUS_NULL_POINTER = 1,
  ZP_STATUS_IO = 2,
  ZP_STATUS_PARSE = 3,
  ZP_STATUS_DOMAIN = 4,
  ZP_STATUS_PRECONDITION = 5,
  ZP_STATUS_POLE = 6,
  ZP_STATUS_INVALID_PARAMS = 7,
  ZP_STATUS_MISSING_C1 = 8,
  ZP_STATUS_INSUFFICIENT_RANGE = 9,
  ZP_STATUS_NUMERICAL = 10,
  ZP_STATUS_PANIC = 11,
  ZP_STATUS_OTHER = 12,
} ZpStatus;

// Opaque zero table.
typedef struct ZpTable ZpTable;

typedef struct ZpComplex {
  double re;
  double im;
} ZpComplex;

// A value with an absolute bound on the omitted tail.
typedef struct ZpBounded {
  struct ZpComplex value;
  double tail_bound;
} ZpBounded;

typedef struct ZpLaurent {
  struct ZpComplex c_minus1;
  struct ZpComplex c_0;
  struct ZpComplex c_1;
  double c1_uncertainty;
  double condition;
} ZpLaurent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, empty after a successful call. The
// pointer stays valid until the next call on the same thread.
const char *zp_last_error(void);

// Load a text table or ZRT1 cache. `limit == 0` keeps every ordinate.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ZpStatus zp_table_load(const char *path, uintptr_t limit, struct ZpTable **out);

// Build a table from `n` ordinates (sorted copies are taken).
//
// # Safety
// `ordinates` must point to `n` doubles; `out` must be writable.
enum ZpStatus zp_table_from_ordinates(const double *ordinates, uintptr_t n, struct ZpTable **out);

// # Safety
// `table` must come from this library and not be freed twice. Null is ignored.
void zp_table_free(struct ZpTable *table);

// Number of ordinates, or 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle.
uintptr_t zp_table_len(const struct ZpTable *table);

// `φ(s)`, `Re s > 0`.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum ZpStatus zp_phi(const struct ZpTable *table, struct ZpComplex s, struct ZpBounded *out);

// `V(s)`, `Im s > 0`.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum ZpStatus zp_v(const struct ZpTable *table, struct ZpComplex s, struct ZpBounded *out);

// `V(s)` minus its singular model.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum ZpStatus zp_cramer_remainder(const struct ZpTable *table,
                                  struct ZpComplex s,
                                  struct ZpBounded *out);

// `(x; e^{−iβ})_ζ`.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum ZpStatus zp_zeta_pochhammer(const struct ZpTable *table,
                                 struct ZpComplex x,
                                 double beta,
                                 struct ZpBounded *out);

// `F(z̲; α̲)`. Pass a null `c1_table` to omit `c₁`.
//
// # Safety
// `alphas` and `zs` must point to `n` elements; `c1_table` must be null or
// a live handle; `out` must be writable.
enum ZpStatus zp_poly_f(const double *alphas,
                        const struct ZpComplex *zs,
                        uintptr_t n,
                        int32_t sign_c0,
                        const struct ZpTable *c1_table,
                        struct ZpComplex *out);

// `F̃(z̲; α̲)`. Pass a null `c1_table` to omit `c₁`.
//
// # Safety
// As for [`zp_poly_f`].
enum ZpStatus zp_poly_f_tilde(const double *alphas,
                              const struct ZpComplex *zs,
                              uintptr_t n,
                              int32_t sign_c0,
                              const struct ZpTable *c1_table,
                              struct ZpComplex *out);

// `S(z̲; α̲)`. `numeric_c1 != 0` fits `c₁` from `table`; otherwise it is omitted.
//
// # Safety
// `table` must be a live handle; `alphas` and `zs` must point to `n`
// elements; `out` must be writable.
enum ZpStatus zp_s_sine(const struct ZpTable *table,
                        const double *alphas,
                        const struct ZpComplex *zs,
                        uintptr_t n,
                        int32_t sign_c0,
                        int32_t numeric_c1,
                        struct ZpBounded *out);

// `S̃(z̲; α̲, ω̲)`.
//
// # Safety
// As for [`zp_s_sine`]; `omegas` must also point to `n` elements.
enum ZpStatus zp_s_exp(const struct ZpTable *table,
                       const double *alphas,
                       const struct ZpComplex *zs,
                       const struct ZpComplex *omegas,
                       uintptr_t n,
                       int32_t sign_c0,
                       int32_t numeric_c1,
                       struct ZpBounded *out);

// Laurent coefficients of `φ(αs)` fitted on `points` grid points.
//
// # Safety
// `table` must be a live handle; `out` must be writable.
enum ZpStatus zp_laurent_coeffs(const struct ZpTable *table,
                                double alpha,
                                uintptr_t points,
                                struct ZpLaurent *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAPROD_H */
