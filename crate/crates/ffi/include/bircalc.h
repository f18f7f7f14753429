/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef BIRCALC_H
#define BIRCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define BIRCALC_SPACE_P3 0

#define BIRCALC_SPACE_CUBIC 1

typedef enum BircalcStatus {
  BIRCALC_STATUS_OK = 0,
  BIRCALC_STATUS_NULL_POINTER = 1,
  BIRCALC_STATUS_INVALID_UTF8 = 2,
  /**
   * A syntactically malformed polynomial, word, permutation or catalog.
   */
  BIRCALC_STATUS_PARSE = 3,
  /**
   * Well-formed input outside the domain of the operation.
   */
  BIRCALC_STATUS_DOMAIN = 4,
  BIRCALC_STATUS_OVERFLOW = 5,
  BIRCALC_STATUS_IO = 6,
  BIRCALC_STATUS_PANIC = 7,
} BircalcStatus;

typedef struct BircalcCatalog BircalcCatalog;

/**
 * A polynomial with exact rational coefficients and positive integer
 * weights.
 */
typedef struct BircalcPolynomial BircalcPolynomial;

/**
 * Result of [`bircalc_word_certify`]. The string fields are NULL when not
 * applicable; release them with [`bircalc_certificate_clear`].
 */
typedef struct BircalcCertificate {
  bool certified;
  bool conjugate;
  bool field_automorphism_obstruction;
  char *witness;
  char *image;
  char *reason;
} BircalcCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *bircalc_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void bircalc_string_free(char *s);

/**
 * Degree of the link attached to a curve of genus `genus` and degree
 * `degree`; only the admissible pairs are accepted.
 *
 * # Safety
 * `out_degree` must be a valid pointer.
 */
enum BircalcStatus bircalc_link_degree(uint32_t space_code,
                                       uint32_t genus,
                                       uint32_t degree,
                                       int64_t *out_degree);

/**
 * # Safety
 * `out_cube` must be a valid pointer.
 */
enum BircalcStatus bircalc_anticanonical_cube(uint32_t space_code,
                                              uint32_t genus,
                                              uint32_t degree,
                                              int64_t *out_cube);

/**
 * `h^0(-n K_X)`.
 *
 * # Safety
 * `out_dim` must be a valid pointer.
 */
enum BircalcStatus bircalc_rr_dimension(uint32_t space_code,
                                        uint32_t genus,
                                        uint32_t degree,
                                        uint32_t n,
                                        int64_t *out_dim);

/**
 * # Safety
 * `out_holds` must be a valid pointer.
 */
enum BircalcStatus bircalc_sextic_certificate(uint32_t space_code,
                                              uint32_t genus,
                                              uint32_t degree,
                                              bool *out_holds);

/**
 * Parses `literal` in variables `x1..xn` with the given weights.
 *
 * # Safety
 * `literal` must be a nul-terminated string, `weights` must point to `n`
 * values, and `out_poly` must be a valid pointer.
 */
enum BircalcStatus bircalc_poly_parse(const char *literal,
                                      const uint32_t *weights,
                                      size_t n,
                                      struct BircalcPolynomial **out_poly);

/**
 * # Safety
 * `p` must be NULL or a handle from this library, not yet freed.
 */
void bircalc_poly_free(struct BircalcPolynomial *p);

/**
 * # Safety
 * `p` must be a live handle and `out_string` a valid pointer.
 */
enum BircalcStatus bircalc_poly_to_string(const struct BircalcPolynomial *p, char **out_string);

/**
 * Minimum weighted degree of the terms.
 *
 * # Safety
 * `p` must be a live handle and `out_valuation` a valid pointer.
 */
enum BircalcStatus bircalc_poly_valuation(const struct BircalcPolynomial *p,
                                          uint64_t *out_valuation);

/**
 * Substitutes `x_i -> u^{w_i} x_i` and factors out `u^power`. The strict
 * transform is in variables `(u, x1, .., xn)`; `u` is variable 1.
 *
 * # Safety
 * `p` must be a live handle; the outputs must be valid pointers.
 */
enum BircalcStatus bircalc_poly_chart_pullback(const struct BircalcPolynomial *p,
                                               uint64_t *out_power,
                                               struct BircalcPolynomial **out_strict);

/**
 * # Safety
 * `out_discrepancy` must be a valid pointer.
 */
enum BircalcStatus bircalc_blowup_discrepancy(uint64_t a, uint64_t b, uint64_t *out_discrepancy);

/**
 * `E . C~` for the curve `f1 = f2 = 0`, written as `p/q` or `p`. Both
 * polynomials must carry the weights `(1, a, b)` with `a <= b`.
 *
 * # Safety
 * `f1`, `f2` must be live handles and `out_string` a valid pointer.
 */
enum BircalcStatus bircalc_blowup_exceptional_intersection(uint64_t a,
                                                           uint64_t b,
                                                           const struct BircalcPolynomial *f1,
                                                           const struct BircalcPolynomial *f2,
                                                           char **out_string);

/**
 * `n (2 - (a+b)^2/(ab) v_H)` as `p/q` or `p`.
 *
 * # Safety
 * `out_string` must be a valid pointer.
 */
enum BircalcStatus bircalc_blowup_anticanonical_defect(uint64_t a,
                                                       uint64_t b,
                                                       uint64_t v_h,
                                                       uint64_t n,
                                                       char **out_string);

/**
 * # Safety
 * `path` must be a nul-terminated string and `out_catalog` a valid pointer.
 */
enum BircalcStatus bircalc_catalog_load(const char *path, struct BircalcCatalog **out_catalog);

/**
 * Parses catalog records from an in-memory string.
 *
 * # Safety
 * `contents` must be a nul-terminated string and `out_catalog` a valid
 * pointer.
 */
enum BircalcStatus bircalc_catalog_parse(const char *contents, struct BircalcCatalog **out_catalog);

/**
 * Number of curves, or 0 for NULL.
 *
 * # Safety
 * `c` must be NULL or a live handle.
 */
size_t bircalc_catalog_len(const struct BircalcCatalog *c);

/**
 * # Safety
 * `c` must be NULL or a handle from this library, not yet freed.
 */
void bircalc_catalog_free(struct BircalcCatalog *c);

/**
 * # Safety
 * `catalog` must be NULL or a live handle, `w` a nul-terminated string and
 * `out_string` a valid pointer.
 */
enum BircalcStatus bircalc_word_normalize(const struct BircalcCatalog *catalog,
                                          const char *w,
                                          char **out_string);

/**
 * The image in the free product of the order-two factors.
 *
 * # Safety
 * As for [`bircalc_word_normalize`].
 */
enum BircalcStatus bircalc_word_psi(const struct BircalcCatalog *catalog,
                                    const char *w,
                                    char **out_string);

/**
 * # Safety
 * `catalog` must be NULL or a live handle, `w1`, `w2` nul-terminated
 * strings and `out_conjugate` a valid pointer.
 */
enum BircalcStatus bircalc_word_conjugate(const struct BircalcCatalog *catalog,
                                          const char *w1,
                                          const char *w2,
                                          bool *out_conjugate);

/**
 * Tries to certify that the automorphism permuting the chi factors by
 * `perm` (cycle notation, e.g. `(a b)`) is not inner. A refusal is not an
 * error: `certified` is false and `reason` is set.
 *
 * # Safety
 * `catalog` must be a live handle, `perm` a nul-terminated string and
 * `out_cert` a valid pointer.
 */
enum BircalcStatus bircalc_word_certify(const struct BircalcCatalog *catalog,
                                        const char *perm,
                                        struct BircalcCertificate *out_cert);

/**
 * Frees the strings inside `cert` and resets them to NULL.
 *
 * # Safety
 * `cert` must be NULL or point to a certificate filled by
 * [`bircalc_word_certify`].
 */
void bircalc_certificate_clear(struct BircalcCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIRCALC_H */
