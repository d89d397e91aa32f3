#ifndef ASSOCLOC_H
#define ASSOCLOC_H

/* Generated by cbindgen from assocloc-capi; regenerate with `cargo build -p assocloc-capi`. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  /**
   * The call succeeded.
   */
  ASSOCLOC_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  ASSOCLOC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ASSOCLOC_STATUS_INVALID_UTF8 = 2,
  /**
   * The input text did not parse; see `assocloc_last_error`.
   */
  ASSOCLOC_STATUS_PARSE_ERROR = 3,
  /**
   * The input parsed but violates the algebra or module axioms.
   */
  ASSOCLOC_STATUS_INVALID_INPUT = 4,
  /**
   * A construction failed (non-simple summand, zero divisor, …).
   */
  ASSOCLOC_STATUS_MATH_ERROR = 5,
  /**
   * An index was out of range.
   */
  ASSOCLOC_STATUS_OUT_OF_RANGE = 6,
} AssoclocStatus;

/**
 * An algebra presentation (opaque).
 */
typedef struct AssoclocAlgebra AssoclocAlgebra;

/**
 * A localizing ring `A_M` (opaque).
 */
typedef struct AssoclocLocalRing AssoclocLocalRing;

/**
 * A verified right module over some algebra (opaque).
 */
typedef struct AssoclocModule AssoclocModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message from the most recent failing call on this thread, or NULL
 * if none has failed yet. The pointer is valid until the next failing
 * call on the same thread; do not free it.
 */
const char *assocloc_last_error(void);

/**
 * Parse and validate an algebra file. On success stores a new handle in
 * `*out`; release it with [`assocloc_algebra_free`].
 *
 * # Safety
 * `text` must be a NUL-terminated string valid for reads and `out` a
 * valid pointer to writable memory.
 */
AssoclocStatus assocloc_algebra_parse(const char *text, AssoclocAlgebra **out);

/**
 * Release an algebra handle; NULL is a no-op.
 *
 * # Safety
 * `a` must be NULL or a pointer returned by [`assocloc_algebra_parse`]
 * that has not been freed already.
 */
void assocloc_algebra_free(AssoclocAlgebra *a);

/**
 * Dimension over the prime field; 0 if the handle is NULL.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
uintptr_t assocloc_algebra_dim(const AssoclocAlgebra *a);

/**
 * The field characteristic p; 0 if the handle is NULL.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
uint64_t assocloc_algebra_modulus(const AssoclocAlgebra *a);

/**
 * Whether the multiplication table is commutative; false on NULL.
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
bool assocloc_algebra_is_commutative(const AssoclocAlgebra *a);

/**
 * The algebra's name as a fresh string; NULL if the handle is NULL.
 * Release with [`assocloc_string_free`].
 *
 * # Safety
 * `a` must be NULL or a live algebra handle.
 */
char *assocloc_algebra_name(const AssoclocAlgebra *a);

/**
 * Parse a module file over `algebra` and verify the module axioms. On
 * success stores a new handle in `*out`; release it with
 * [`assocloc_module_free`].
 *
 * # Safety
 * `text` must be a NUL-terminated string valid for reads, `algebra` a
 * live algebra handle, and `out` a valid pointer to writable memory.
 */
AssoclocStatus assocloc_module_parse(const char *text,
                                     const AssoclocAlgebra *algebra,
                                     AssoclocModule **out);

/**
 * Release a module handle; NULL is a no-op.
 *
 * # Safety
 * `m` must be NULL or a pointer returned by [`assocloc_module_parse`]
 * that has not been freed already.
 */
void assocloc_module_free(AssoclocModule *m);

/**
 * Dimension of the module; 0 if the handle is NULL.
 *
 * # Safety
 * `m` must be NULL or a live module handle.
 */
uintptr_t assocloc_module_dim(const AssoclocModule *m);

/**
 * Construct the localizing ring `A_M` for `M = M_0 ⊕ … ⊕ M_{len-1}`.
 * All summands must be simple modules over `algebra`. On success stores
 * a new handle in `*out`; release it with [`assocloc_local_ring_free`].
 *
 * # Safety
 * `algebra` must be a live algebra handle, `summands` a valid array of
 * `len ≥ 1` live module handles over that same algebra, and `out` a
 * valid pointer to writable memory.
 */
AssoclocStatus assocloc_localize(const AssoclocAlgebra *algebra,
                                 const AssoclocModule *const *summands,
                                 uintptr_t len,
                                 uint64_t seed,
                                 uint64_t cap,
                                 AssoclocLocalRing **out);

/**
 * Release a local-ring handle; NULL is a no-op.
 *
 * # Safety
 * `l` must be NULL or a pointer returned by [`assocloc_localize`] that
 * has not been freed already.
 */
void assocloc_local_ring_free(AssoclocLocalRing *l);

/**
 * Dimension of `A_M` over the prime field; 0 if the handle is NULL.
 *
 * # Safety
 * `l` must be NULL or a live local-ring handle.
 */
uintptr_t assocloc_local_ring_dim(const AssoclocLocalRing *l);

/**
 * Dimension of `ker η ⊆ A`; 0 if the handle is NULL.
 *
 * # Safety
 * `l` must be NULL or a live local-ring handle.
 */
uintptr_t assocloc_local_ring_kernel_dim(const AssoclocLocalRing *l);

/**
 * Number of recorded unit denominators; 0 if the handle is NULL.
 *
 * # Safety
 * `l` must be NULL or a live local-ring handle.
 */
uintptr_t assocloc_local_ring_num_denominators(const AssoclocLocalRing *l);

/**
 * Whether the denominator list was truncated at the enumeration cap;
 * false on NULL.
 *
 * # Safety
 * `l` must be NULL or a live local-ring handle.
 */
bool assocloc_local_ring_truncated(const AssoclocLocalRing *l);

/**
 * Run the full invariant suite on an algebra and return the rendered
 * report in `*out_report` (release with [`assocloc_string_free`]).
 * `*out_failures` receives the number of unexpected check failures, so
 * 0 means every check passed.
 *
 * # Safety
 * `algebra` must be a live algebra handle; `out_report` and
 * `out_failures` must be valid pointers to writable memory.
 */
AssoclocStatus assocloc_verify(const AssoclocAlgebra *algebra,
                               uint64_t seed,
                               uint64_t cap,
                               char **out_report,
                               uintptr_t *out_failures);

/**
 * Release a string returned by this library; NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library that has not
 * been freed already.
 */
void assocloc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASSOCLOC_H */
