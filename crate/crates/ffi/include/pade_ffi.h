#ifndef PADE_FFI_H
#define PADE_FFI_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes. The first four agree with the exit codes of `pade`.
 */
typedef enum PadeStatus {
  PADE_STATUS_OK = 0,
  /*
   A check failed or a computation could not complete.
   */
  PADE_STATUS_FAILURE = 1,
  /*
   The Rodrigues image is the zero polynomial.
   */
  PADE_STATUS_ZERO_POLYNOMIAL = 2,
  /*
   The input violates a hypothesis of the construction.
   */
  PADE_STATUS_HYPOTHESIS = 3,
  PADE_STATUS_NULL_POINTER = 4,
  PADE_STATUS_INVALID_UTF8 = 5,
  PADE_STATUS_PARSE = 6,
  PADE_STATUS_PANIC = 7,
} PadeStatus;

/*
 An opaque, validated operator family.
 */
typedef struct PadeFamily PadeFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The version of the JSON report envelope.
 */
uint32_t pade_schema_version(void);

/*
 The message of the last failed call on this thread, or null. The pointer
 stays valid until the next call into the library on this thread.
 */
const char *pade_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void pade_string_free(char *s);

/*
 Builds a family from a JSON object such as
 `{"family": "chebyshev", "u": 2}`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PadeStatus pade_family_new(const char *json, struct PadeFamily **out);

/*
 Releases a family. Null is ignored.

 # Safety
 `fam` must come from [`pade_family_new`] and not have been freed.
 */
void pade_family_free(struct PadeFamily *fam);

/*
 Constructs and verifies the Pade system of index `n` for `f = z^h`.

 # Safety
 `fam` must be a live family and `out_json` a valid pointer.
 */
enum PadeStatus pade_construct(const struct PadeFamily *fam,
                               uintptr_t n,
                               uintptr_t h,
                               char **out_json);

/*
 Computes the determinant of index `n` and compares it with its closed form.

 # Safety
 `fam` must be a live family and `out_json` a valid pointer.
 */
enum PadeStatus pade_det(const struct PadeFamily *fam,
                         uintptr_t n,
                         bool dump_matrix,
                         char **out_json);

/*
 Criterion constants for `alpha` (a rational such as `"64"` or `"1/25"`)
 at `place` (`"inf"` or a prime).

 # Safety
 The strings must be NUL-terminated and `out_json` a valid pointer.
 */
enum PadeStatus pade_criterion(uint32_t u,
                               const char *alpha,
                               const char *place,
                               double eps,
                               char **out_json);

/*
 The threshold on `log |alpha|` above which `V(alpha) > 0`.

 # Safety
 `out` must be a valid pointer.
 */
enum PadeStatus pade_threshold(uint32_t u, double *out);

/*
 `V(alpha)` at the archimedean place.

 # Safety
 `alpha` must be NUL-terminated and `out` a valid pointer.
 */
enum PadeStatus pade_v_alpha(uint32_t u, const char *alpha, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADE_FFI_H */
