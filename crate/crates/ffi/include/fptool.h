#ifndef FPTOOL_H
#define FPTOOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum FptStatus {
  FPT_STATUS_OK = 0,
  FPT_STATUS_NULL_POINTER = 1,
  FPT_STATUS_INVALID_UTF8 = 2,
  FPT_STATUS_PARSE = 3,
  FPT_STATUS_NOT_PRIME = 4,
  FPT_STATUS_INVALID_ARGUMENT = 5,
  FPT_STATUS_RING_MISMATCH = 6,
  FPT_STATUS_RESOURCE_LIMIT = 7,
  FPT_STATUS_PANIC = 8,
} FptStatus;

// An ideal of an [`FptRing`].
typedef struct FptIdeal FptIdeal;

// A polynomial ring over a prime field.
typedef struct FptRing FptRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *fpt_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void fpt_string_free(char *s);

// Creates `F_p[vars]`. `vars` is comma-separated; `order` is "grevlex",
// "lex" or null for grevlex.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum FptStatus fpt_ring_new(uint64_t p, const char *vars, const char *order, struct FptRing **out);

// # Safety
// `ring` must be null or come from [`fpt_ring_new`] and not have been freed.
void fpt_ring_free(struct FptRing *ring);

// Parses comma-separated generators.
//
// # Safety
// `ring` must be a live handle, `gens` NUL-terminated, `out` writable.
enum FptStatus fpt_ideal_parse(const struct FptRing *ring, const char *gens, struct FptIdeal **out);

// # Safety
// `ideal` must be null or a handle from this library not yet freed.
void fpt_ideal_free(struct FptIdeal *ideal);

// The reduced Groebner basis as "(g1, g2, ...)".
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum FptStatus fpt_ideal_to_string(const struct FptIdeal *ideal, char **out);

// Writes whether `inner ⊆ outer`.
//
// # Safety
// Both handles must be live and `out` writable.
enum FptStatus fpt_ideal_contains(const struct FptIdeal *outer,
                                  const struct FptIdeal *inner,
                                  bool *out);

// Writes whether the two ideals are equal.
//
// # Safety
// Both handles must be live and `out` writable.
enum FptStatus fpt_ideal_equal(const struct FptIdeal *a, const struct FptIdeal *b, bool *out);

// `I^{[1/p^e]}`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum FptStatus fpt_pe_root(const struct FptIdeal *ideal, uint32_t e, struct FptIdeal **out);

// `ν_I(p^e)` at the maximal ideal of the origin.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum FptStatus fpt_nu(const struct FptIdeal *ideal, uint32_t e, uint64_t *out);

// Truncated test ideal of `I^{num/den}` summed over levels `0..=e_max`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum FptStatus fpt_test_ideal(const struct FptIdeal *ideal,
                              uint64_t num,
                              uint64_t den,
                              uint32_t e_max,
                              struct FptIdeal **out);

// `Tr^e(f)` printed in the ring order.
//
// # Safety
// `ring` must be a live handle, `poly` NUL-terminated, `out` writable.
enum FptStatus fpt_trace(const struct FptRing *ring, const char *poly, uint32_t e, char **out);

// Splits `beta[0..r]` into `c` rows written row-major into `rows`, which
// must hold `c * r` entries.
//
// # Safety
// `beta` must point to `r` values and `rows` to `c * r` writable values.
enum FptStatus fpt_split(const uint64_t *beta,
                         uintptr_t r,
                         uintptr_t c,
                         uint64_t q,
                         uint64_t *rows);

// Runs the command-line front end on `argv[0..argc]` (without the program
// name). Writes the exit code and the captured stdout and stderr.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; out-pointers must be
// writable.
enum FptStatus fpt_run_cli(uintptr_t argc,
                           const char *const *argv,
                           int32_t *exit_code,
                           char **out_stdout,
                           char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FPTOOL_H */
