#ifndef DEDEKIND_SUMS_H
#define DEDEKIND_SUMS_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes: `Ok` on success; `ContractFailure` marks an internal
// consistency failure (two evaluation routes disagreeing);
// `InvalidArgument` marks a violated precondition; `NullPointer` marks a
// null out-pointer.
typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_CONTRACT_FAILURE = 1,
  DS_STATUS_INVALID_ARGUMENT = 2,
  DS_STATUS_NULL_POINTER = 3,
} DsStatus;

// Opaque exact rational number.
typedef struct DsRational DsRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *ds_version(void);

// `s(h, k)` by the O(k) defining sum.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_dedekind_naive(int64_t h, int64_t k, struct DsRational **out);

// `s(h, k)` by the O(log k) continued-fraction formula.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_dedekind_fast(int64_t h, int64_t k, struct DsRational **out);

// `s(h, k)` extended to negative modulus by `s(h, -k) = -s(h, k) - 1/2`.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_dedekind_signed(int64_t h, int64_t k, struct DsRational **out);

// Reciprocity residual `s(h,k) + s(k,h) - (h^2+k^2+1)/(12hk) + 1/4`;
// exactly zero on coprime positive pairs.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_reciprocity_residual(int64_t h, int64_t k, struct DsRational **out);

// Exact 2m-th moment `sum_{(h,k)=1} s(h,k)^(2m)`.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_moment(int64_t k, uint32_t m, struct DsRational **out);

// The exact constant `2 zeta(2m)^2 / zeta(4m)`.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_moment_constant(uint32_t m, struct DsRational **out);

// The multiplicative moment coefficient `f_m(k)`, exactly.
//
// # Safety
// `out` must be a valid pointer to a `*mut DsRational` slot.
enum DsStatus ds_fm(int64_t k, uint32_t m, struct DsRational **out);

// Canonical continued-fraction expansion of `a/q` as a string like
// `"[0;2,3]"`, written through `out`; free with [`ds_string_free`].
//
// # Safety
// `out` must be a valid pointer to a `*mut c_char` slot.
enum DsStatus ds_cf_expand(int64_t a, int64_t q, char **out);

// Render a rational exactly as `"num/den"` (plain `"n"` for integers);
// free with [`ds_string_free`]. Returns NULL if `r` is NULL.
//
// # Safety
// `r` must be a live handle from this library or NULL.
char *ds_rational_to_string(const struct DsRational *r);

// Lossy conversion to double, for display-grade use.
//
// # Safety
// `r` must be a live handle from this library or NULL.
double ds_rational_to_double(const struct DsRational *r);

// Release a rational handle. NULL is ignored.
//
// # Safety
// `r` must be a handle previously returned by this library, not yet freed.
void ds_rational_free(struct DsRational *r);

// Release a string allocated by this library. NULL is ignored.
//
// # Safety
// `s` must be a string previously returned by this library, not yet freed.
void ds_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEDEKIND_SUMS_H */
