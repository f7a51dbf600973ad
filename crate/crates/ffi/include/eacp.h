#ifndef EACP_H
#define EACP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EacpPeriodKind {
  EacpPeriodKind_Finite = 0,
  EacpPeriodKind_Infinite = 1,
  /**
   * Not decided within the cutoff; `value` holds the cutoff.
   */
  EacpPeriodKind_Unknown = 2,
} EacpPeriodKind;

typedef enum EacpStatus {
  EacpStatus_Ok = 0,
  /**
   * Malformed input or invalid argument.
   */
  EacpStatus_InputError = 1,
  /**
   * The question could not be decided (uncertified numerics).
   */
  EacpStatus_Undetermined = 2,
  /**
   * A verification step failed.
   */
  EacpStatus_CheckFailed = 3,
  EacpStatus_NullPointer = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  EacpStatus_Internal = 5,
} EacpStatus;

/**
 * Opaque algebra handle.
 */
typedef struct EacpAlgebra EacpAlgebra;

typedef struct EacpPeriod {
  enum EacpPeriodKind kind;
  uint64_t value;
} EacpPeriod;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an algebra from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EacpStatus eacp_algebra_from_json(const char *json, struct EacpAlgebra **out);

/**
 * Builds a catalog algebra such as `3d:C6(1,1)`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EacpStatus eacp_algebra_from_catalog(const char *id, struct EacpAlgebra **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `alg` must come from this library and not be used afterwards.
 */
void eacp_algebra_free(struct EacpAlgebra *alg);

/**
 * Total dimension `n + 1`.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum EacpStatus eacp_algebra_dim(const struct EacpAlgebra *alg, uintptr_t *out);

/**
 * Product of two elements written as linear expressions (`1/2 h1 + r`);
 * the result is written in the same syntax.
 *
 * # Safety
 * `alg` must be a live handle, `x` and `y` NUL-terminated strings and `out`
 * a valid pointer. The returned string must be freed with
 * [`eacp_string_free`].
 */
enum EacpStatus eacp_multiply(const struct EacpAlgebra *alg,
                              const char *x,
                              const char *y,
                              char **out);

/**
 * Right period of `h_{i+1}` (`i` is 0-based); `m_max = 0` selects the
 * default cutoff.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum EacpStatus eacp_right_period(const struct EacpAlgebra *alg,
                                  uintptr_t i,
                                  uint64_t m_max,
                                  struct EacpPeriod *out);

/**
 * Plenary period of `h_{i+1}` (`i` is 0-based); `m_max = 0` selects the
 * default cutoff.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum EacpStatus eacp_plenary_period(const struct EacpAlgebra *alg,
                                    uintptr_t i,
                                    uint64_t m_max,
                                    struct EacpPeriod *out);

/**
 * Writes 1 if the algebra is simple and 0 if not; returns
 * [`EacpStatus::Undetermined`] when the search could not be certified.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum EacpStatus eacp_is_simple(const struct EacpAlgebra *alg, int *out);

/**
 * Canonical form report as JSON (`delta`, `algebra`, `basis_change`).
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer. The returned
 * string must be freed with [`eacp_string_free`].
 */
enum EacpStatus eacp_canonical_form_json(const struct EacpAlgebra *alg, char **out);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *eacp_last_error_message(void);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void eacp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EACP_H */
