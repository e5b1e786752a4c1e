/* C interface to the subperm canonical-form library. */

#ifndef SUBPERM_H
#define SUBPERM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Canonicalization actions for [`sp_canon`].
 */
typedef enum SpCanonAction {
  SP_CANON_ACTION_B_EQUIV = 0,
  SP_CANON_ACTION_U_EQUIV,
  SP_CANON_ACTION_U_CONGR,
  SP_CANON_ACTION_B_CONGR,
} SpCanonAction;

/**
 * Matrix kinds for [`sp_p_congruent`].
 */
typedef enum SpCongrKind {
  SP_CONGR_KIND_SYMMETRIC = 0,
  SP_CONGR_KIND_ALTERNATING,
} SpCongrKind;

/**
 * Status codes for every fallible entry point.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_ARGUMENT,
  SP_STATUS_INVALID_UTF8,
  SP_STATUS_PARSE,
  SP_STATUS_DIMENSION_MISMATCH,
  SP_STATUS_FIELD_MISMATCH,
  SP_STATUS_NOT_SUB_PERMUTATION,
  SP_STATUS_NOT_SYMMETRIC,
  SP_STATUS_NOT_ALTERNATING,
  SP_STATUS_NOT_PSEUDO_PERMUTATION,
  SP_STATUS_WRONG_CHARACTERISTIC,
  SP_STATUS_NON_SQUARE,
  SP_STATUS_KIND_MISMATCH,
  SP_STATUS_BAD_COMPOSITION,
  SP_STATUS_NOT_INVOLUTIVE,
  SP_STATUS_NOT_REDUCED,
  SP_STATUS_TOO_LARGE,
  SP_STATUS_BUDGET_EXCEEDED,
  SP_STATUS_TOWER_LEVEL,
  SP_STATUS_DIVISION_BY_ZERO,
  SP_STATUS_CRITERIA_DISAGREE,
  SP_STATUS_UNSUPPORTED_FIELD,
  SP_STATUS_PANIC,
} SpStatus;

/**
 * Opaque field handle.
 */
typedef struct SpField SpField;

/**
 * Opaque matrix handle.
 */
typedef struct SpMatrix SpMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent error on this thread, or NULL; release with sp_string_free.
 */
char *sp_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by one of the
 * string-returning functions here, not yet freed.
 */
void sp_string_free(char *s);

/**
 * Create the prime field GF(p).
 *
 * # Safety
 * `out` must be a valid pointer to an SpField pointer.
 */
enum SpStatus sp_field_prime(uint64_t p, struct SpField **out);

/**
 * Create the binary field GF(2^k).
 *
 * # Safety
 * `out` must be a valid pointer to an SpField pointer.
 */
enum SpStatus sp_field_binary(uint32_t k, struct SpField **out);

/**
 * Create the square-closed quadratic tower over the odd prime p with the
 * given level cap.
 *
 * # Safety
 * `out` must be a valid pointer to an SpField pointer.
 */
enum SpStatus sp_field_tower(uint64_t p, uint8_t cap, struct SpField **out);

/**
 * Parse a field spec such as "GF(2)", "GF(2^3)" or "TOWER(3)".
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` a valid out-pointer.
 */
enum SpStatus sp_field_parse(const char *spec, struct SpField **out);

/**
 * The field's canonical spec string; release with sp_string_free.
 *
 * # Safety
 * `field` must be a live handle from this library.
 */
char *sp_field_spec(const struct SpField *field);

/**
 * # Safety
 * `field` must be NULL or a live handle, not yet freed.
 */
void sp_field_free(struct SpField *field);

/**
 * Parse a matrix in the text format (field header, dimension, rows).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` a valid out-pointer.
 */
enum SpStatus sp_matrix_parse(const char *text, struct SpMatrix **out);

/**
 * Print a matrix in the round-trippable text format; release with
 * sp_string_free.
 *
 * # Safety
 * `matrix` must be a live handle from this library.
 */
char *sp_matrix_print(const struct SpMatrix *matrix);

/**
 * # Safety
 * `matrix` must be NULL or a live handle, not yet freed.
 */
void sp_matrix_free(struct SpMatrix *matrix);

/**
 * Matrix dimension n.
 *
 * # Safety
 * `matrix` must be a live handle.
 */
size_t sp_matrix_dim(const struct SpMatrix *matrix);

/**
 * Exact rank.
 *
 * # Safety
 * `matrix` must be a live handle; `out` a valid out-pointer.
 */
enum SpStatus sp_matrix_rank(const struct SpMatrix *matrix, size_t *out);

/**
 * Canonicalize under the requested action. `out_canonical` receives the
 * canonical form. For the equivalence actions, `out_w1`/`out_w2` (when
 * non-NULL) receive the witnesses h and k with h' X k = Y; for the
 * congruence actions `out_w1` receives u with u' X u = Y and `out_w2` is
 * left untouched.
 *
 * # Safety
 * `matrix` must be a live handle; `out_canonical` a valid out-pointer;
 * `out_w1`/`out_w2` NULL or valid out-pointers.
 */
enum SpStatus sp_canon(const struct SpMatrix *matrix,
                       enum SpCanonAction action,
                       struct SpMatrix **out_canonical,
                       struct SpMatrix **out_w1,
                       struct SpMatrix **out_w2);

/**
 * U-equivalence of two matrices.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid out-pointer.
 */
enum SpStatus sp_u_equivalent(const struct SpMatrix *a, const struct SpMatrix *b, bool *out);

/**
 * B-equivalence of two matrices.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid out-pointer.
 */
enum SpStatus sp_b_equivalent(const struct SpMatrix *a, const struct SpMatrix *b, bool *out);

/**
 * P-equivalence for the standard parabolic named by a composition of n.
 *
 * # Safety
 * `a`, `b` must be live handles; `composition` must point to `len` u32
 * values; `out` a valid out-pointer.
 */
enum SpStatus sp_p_equivalent(const struct SpMatrix *a,
                              const struct SpMatrix *b,
                              const uint32_t *composition,
                              size_t len,
                              bool *out);

/**
 * P-congruence of two symmetric or two alternating matrices.
 *
 * # Safety
 * Same contract as [`sp_p_equivalent`].
 */
enum SpStatus sp_p_congruent(const struct SpMatrix *a,
                             const struct SpMatrix *b,
                             const uint32_t *composition,
                             size_t len,
                             enum SpCongrKind kind,
                             bool *out);

/**
 * Block-rank and cross-count tables as a JSON object
 * {"block_rank": [[..]], "cross_count": [[..]]}; release with
 * sp_string_free. Returns NULL on error (see sp_last_error_message).
 *
 * # Safety
 * `matrix` must be a live handle; `composition` must point to `len` u32
 * values.
 */
char *sp_invariants_json(const struct SpMatrix *matrix, const uint32_t *composition, size_t len);

/**
 * Number of B-congruence orbits of alternating n-by-n matrices, as a
 * decimal string; release with sp_string_free.
 */
char *sp_count_alt_orbits(uint32_t n);

/**
 * Number of B-congruence orbits of symmetric n-by-n matrices over a
 * square-closed odd-characteristic field, as a decimal string; release
 * with sp_string_free.
 */
char *sp_count_sym_orbits(uint32_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBPERM_H */
