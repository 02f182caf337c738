#ifndef POLARFERMI_H
#define POLARFERMI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Curve kind `i` (Δ = 0 kernel).
 */
#define PF_KIND_I 0

/**
 * Curve kind `g` (best constant gap).
 */
#define PF_KIND_G 1

/**
 * Curve kind `o` (infimum kernel).
 */
#define PF_KIND_O 2

/**
 * `m` with the Δ = 0 kernel.
 */
#define PF_M_PLAIN 0

/**
 * `m̄`, maximized over a constant gap.
 */
#define PF_M_BAR 1

/**
 * `m̃`, with the infimum kernel.
 */
#define PF_M_TILDE 2

/**
 * Phase labels written by [`pf_phase_decision`].
 */
#define PF_PHASE_SUPERFLUID 0

#define PF_PHASE_NORMAL 1

#define PF_PHASE_NORMAL_METASTABLE 2

/**
 * Result code of every entry point.
 */
typedef enum PfStatus {
  PF_STATUS_OK = 0,
  PF_STATUS_INVALID_ARGUMENT = 1,
  PF_STATUS_NUMERICAL_FAILURE = 2,
  PF_STATUS_NULL_POINTER = 3,
  PF_STATUS_PANIC = 4,
} PfStatus;

/**
 * Solutions of the one-dimensional gap equation.
 */
typedef struct PfGapSolutions PfGapSolutions;

/**
 * Physical parameters `(μ̄, δμ, T, g)`.
 */
typedef struct PfParams PfParams;

/**
 * A radial interaction potential.
 */
typedef struct PfPotential PfPotential;

/**
 * Spectrum of the potential on the Fermi sphere.
 */
typedef struct PfSpectrum PfSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pf_version(void);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len` bytes) and returns the full length including the NUL,
 * or 0 when there is no message. A null `buf` only queries the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t pf_last_error_message(char *buf, size_t len);

/**
 * Creates a parameter set; `T = 0` is allowed where the callee permits it.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum PfStatus pf_params_new(double mu_bar,
                            double delta_mu,
                            double temperature,
                            double coupling,
                            struct PfParams **out);

/**
 * # Safety
 * `params` must be null or a handle from [`pf_params_new`] not yet freed.
 */
void pf_params_free(struct PfParams *params);

/**
 * `κ(t)` of the given kind; `out_d` (may be null) receives the minimizing
 * gap for kind g and 0 otherwise.
 *
 * # Safety
 * Out pointers must be null (where allowed) or valid for writes.
 */
enum PfStatus pf_kappa(int32_t kind, double t, double *out_value, double *out_d);

/**
 * `K^Δ(t)` for the given parameters.
 *
 * # Safety
 * `params` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_k_delta(double t, double delta, const struct PfParams *params, double *out);

/**
 * `K̃(t) = inf_Δ K^Δ(t)`.
 *
 * # Safety
 * `params` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_k_tilde(double t, const struct PfParams *params, double *out);

/**
 * The `m`-integral of the given kind (`PF_M_*`).
 *
 * # Safety
 * `params` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_m_integral(const struct PfParams *params, int32_t kind, double *out);

/**
 * `V(r) = depth · e^{−r²/width²}`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum PfStatus pf_potential_gaussian(double depth, double width, struct PfPotential **out);

/**
 * `V(r) = depth · e^{−r/width}`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum PfStatus pf_potential_exponential(double depth, double width, struct PfPotential **out);

/**
 * Piecewise-linear potential through `n` samples `(r[i], v[i])`.
 *
 * # Safety
 * `r` and `v` must point to `n` readable values; `out` must be valid for writes.
 */
enum PfStatus pf_potential_sampled(const double *r,
                                   const double *v,
                                   size_t n,
                                   struct PfPotential **out);

/**
 * # Safety
 * `pot` must be null or a live potential handle.
 */
void pf_potential_free(struct PfPotential *pot);

/**
 * Channel eigenvalues `e_0 … e_{ell_max}`, `e_μ`, the W form and `ρ(λ)` of
 * a Fourier-attractive potential.
 *
 * # Safety
 * `pot` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_sphere_analyze(const struct PfPotential *pot,
                                double mu_bar,
                                size_t ell_max,
                                double lambda,
                                struct PfSpectrum **out);

/**
 * Number of channels, `ell_max + 1`; 0 for a null handle.
 *
 * # Safety
 * `spec` must be null or a live handle.
 */
size_t pf_spectrum_len(const struct PfSpectrum *spec);

/**
 * Copies up to `len` channel eigenvalues into `buf`.
 *
 * # Safety
 * `spec` must be a live handle and `buf` valid for `len` writes.
 */
enum PfStatus pf_spectrum_values(const struct PfSpectrum *spec, double *buf, size_t len);

/**
 * `e_μ`, `ρ(λ)` and the critical temperature `T_c` of an analyzed spectrum.
 * Any out pointer may be null.
 *
 * # Safety
 * `spec` must be a live handle; non-null out pointers must be valid for writes.
 */
enum PfStatus pf_spectrum_summary(const struct PfSpectrum *spec,
                                  double *out_e_mu,
                                  double *out_rho,
                                  double *out_tc);

/**
 * # Safety
 * `spec` must be null or a live handle.
 */
void pf_spectrum_free(struct PfSpectrum *spec);

/**
 * All solutions `Δ > 0` of the one-dimensional gap equation with the
 * coupling stored in `params`.
 *
 * # Safety
 * `params` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_solve_gap_1d(const struct PfParams *params, struct PfGapSolutions **out);

/**
 * Number of solutions; 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
size_t pf_gap_solutions_count(const struct PfGapSolutions *sol);

/**
 * The `index`-th solution in increasing order.
 *
 * # Safety
 * `sol` must be a live handle and `out` valid for writes.
 */
enum PfStatus pf_gap_solutions_root(const struct PfGapSolutions *sol, size_t index, double *out);

/**
 * # Safety
 * `sol` must be null or a live handle.
 */
void pf_gap_solutions_free(struct PfGapSolutions *sol);

/**
 * Normal vs. superfluid for the 1-D contact model with coupling `g` from
 * `params`. `out_f_best` receives NaN when the gap equation has no solution.
 *
 * # Safety
 * `params` must be a live handle; out pointers must be valid for writes.
 */
enum PfStatus pf_phase_decision(const struct PfParams *params,
                                int32_t *out_label,
                                double *out_f_normal,
                                double *out_f_best);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLARFERMI_H */
