/* SPDX-License-Identifier: Apache-2.0 */

#ifndef MORI_H
#define MORI_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum MoriStatus {
  MORI_STATUS_OK = 0,
  MORI_STATUS_NULL_POINTER = 1,
  MORI_STATUS_INVALID_UTF8 = 2,
  MORI_STATUS_PARSE = 3,
  MORI_STATUS_DOMAIN = 4,
  MORI_STATUS_MISMATCH = 5,
  MORI_STATUS_UNSUPPORTED = 6,
  MORI_STATUS_REFUSED = 7,
  MORI_STATUS_PANIC = 8,
} MoriStatus;

// A divisor class `dH - sum m_i E_i` with exact quadratic coefficients.
typedef struct MoriClass MoriClass;

// A characteristic matrix of a Cremona map.
typedef struct MoriMatrix MoriMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *mori_last_error(void);

// Library version as a static NUL-terminated string.
const char *mori_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mori_string_free(char *s);

// Parses a class from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum MoriStatus mori_class_from_json(const char *json, struct MoriClass **out);

// Builds a class from integer degree and multiplicities.
//
// # Safety
// `mults` must point to `len` readable values (or be NULL with `len == 0`).
enum MoriStatus mori_class_from_ints(int64_t degree,
                                     const int64_t *mults,
                                     uintptr_t len,
                                     struct MoriClass **out);

// Closed-form limit class of a family (`odd`, `even`, `even_plus`,
// `odd_plus`, `sq4`, `sq2`) at parameter `n`.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be writable.
enum MoriStatus mori_class_closed_form(const char *family, uint32_t n, struct MoriClass **out);

// # Safety
// `class` must come from this library and not have been freed; NULL is ignored.
void mori_class_free(struct MoriClass *class_);

// Number of points of the class (0 for NULL).
//
// # Safety
// `class` must be NULL or a live handle.
uintptr_t mori_class_points(const struct MoriClass *class_);

// JSON form of the class.
//
// # Safety
// `class` must be a live handle; `out` must be writable.
enum MoriStatus mori_class_to_json(const struct MoriClass *class_, char **out);

// `L_d(m_1, ...)` rendering of the class.
//
// # Safety
// `class` must be a live handle; `out` must be writable.
enum MoriStatus mori_class_to_string(const struct MoriClass *class_, char **out);

// Exact intersection number as a JSON quadratic number; `sign` receives its
// sign (-1, 0, 1) when non-NULL.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable; `sign` may be NULL.
enum MoriStatus mori_class_intersect(const struct MoriClass *a,
                                     const struct MoriClass *b,
                                     char **out,
                                     int8_t *sign);

// Exact pairing with the De Fernex class `F_s`; `sign` receives its sign.
//
// # Safety
// `class` must be a live handle; `out` must be writable; `sign` may be NULL.
enum MoriStatus mori_class_defernex(const struct MoriClass *class_, char **out, int8_t *sign);

// Replaces point `index` (0-based) by `r^2` points of multiplicity `m / r`.
//
// # Safety
// `class` must be a live handle; `out` must be writable.
enum MoriStatus mori_class_uncollide(const struct MoriClass *class_,
                                     uintptr_t index,
                                     uint32_t r,
                                     struct MoriClass **out);

// Matrix by name: `Q`, `S`, `G`, `B` on their own points, or `JS`, `CG`
// at parameter `n`.
//
// # Safety
// `kind` must be a NUL-terminated string; `out` must be writable.
enum MoriStatus mori_matrix_new(const char *kind, uint32_t n, struct MoriMatrix **out);

// # Safety
// `m` must come from this library and not have been freed; NULL is ignored.
void mori_matrix_free(struct MoriMatrix *m);

// JSON form of the matrix.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum MoriStatus mori_matrix_to_json(const struct MoriMatrix *m, char **out);

// Applies the matrix to a class on the same number of points.
//
// # Safety
// `m`, `class` must be live handles; `out` must be writable.
enum MoriStatus mori_matrix_apply(const struct MoriMatrix *m,
                                  const struct MoriClass *class_,
                                  struct MoriClass **out);

// Full limit-ray report of a family at `n`, as JSON.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be writable.
enum MoriStatus mori_eigenray_json(const char *family, uint32_t n, char **out);

// Good-ray certificate for (`family`, n, k) as JSON (`even`, `odd`, `sq4`,
// `sq2`). A refused certificate returns `Refused` with the failing check in
// the error message.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be writable.
enum MoriStatus mori_verify_good_json(const char *family, uint32_t n, uint32_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MORI_H */
