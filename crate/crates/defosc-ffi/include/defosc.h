#ifndef DEFOSC_H
#define DEFOSC_H

/* Generated by cbindgen from defosc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DefoscStatus {
  Ok = 0,
  /**
   * Invalid or degenerate parameters.
   */
  InvalidParams = 1,
  /**
   * The requested representation or level is not admissible.
   */
  NotAdmissible = 2,
  /**
   * Series evaluation failed to converge.
   */
  NoConvergence = 3,
  /**
   * A convention required by the closed form is violated.
   */
  ConventionViolation = 4,
  /**
   * The truncated space is too small for the request.
   */
  GuardBand = 5,
  /**
   * A null pointer or out-of-range argument was passed.
   */
  BadArgument = 6,
} DefoscStatus;

/**
 * Opaque deformation-parameter handle.
 */
typedef struct DefoscParams DefoscParams;

/**
 * Opaque truncated-representation handle.
 */
typedef struct DefoscRep DefoscRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread, or null when the last call
 * succeeded.  The pointer stays valid until the next failing call on the
 * same thread.
 */
const char *defosc_last_error_message(void);

/**
 * Allocate a parameter handle.  Returns null when any field is
 * non-positive or non-finite (chi0 may be any finite value).
 */
struct DefoscParams *defosc_params_new(double p,
                                       double q,
                                       double alpha,
                                       double nu,
                                       double phi1,
                                       double phi2,
                                       double chi0);

/**
 * Free a parameter handle.  Null is a no-op.
 */
void defosc_params_free(struct DefoscParams *params);

/**
 * Validate the parameters for a representation of `max_level + 1` levels.
 * On success writes the regime (0 = A, 1 = B) to `regime_out` when
 * non-null.
 */
enum DefoscStatus defosc_validate(const struct DefoscParams *params,
                                  uintptr_t max_level,
                                  int *regime_out);

/**
 * Build a truncated representation of dimension `dim`.  Returns null on
 * failure.
 */
struct DefoscRep *defosc_rep_new(const struct DefoscParams *params, uintptr_t dim);

/**
 * Free a representation handle.  Null is a no-op.
 */
void defosc_rep_free(struct DefoscRep *rep);

/**
 * Deformed number [x] for the given parameters.
 */
enum DefoscStatus defosc_deformed_number(const struct DefoscParams *params, double x, double *out);

/**
 * Level-n energy eigenvalue.
 */
enum DefoscStatus defosc_energy(const struct DefoscParams *params, uintptr_t n, double *out);

/**
 * Fill `out` (length `levels`) with energies E_0 .. E_{levels-1}.
 */
enum DefoscStatus defosc_spectrum(const struct DefoscParams *params, uintptr_t levels, double *out);

/**
 * Lowering ladder coefficient: the matrix element <n-1| a |n> of the
 * representation.  Requires 1 <= n < dim.
 */
enum DefoscStatus defosc_rep_ladder_down(const struct DefoscRep *rep, uintptr_t n, double *out);

/**
 * Run the full algebra residual suite at the given dimension and
 * tolerance; writes 1 to `all_pass_out` when every non-erratum identity
 * passes, else 0.
 */
enum DefoscStatus defosc_verify_algebra(const struct DefoscParams *params,
                                        uintptr_t dim,
                                        double tol,
                                        int *all_pass_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEFOSC_H */
