#ifndef LLCRACK_H
#define LLCRACK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LlStatus {
  LL_STATUS_OK = 0,
  LL_STATUS_NULL_POINTER = 1,
  LL_STATUS_INVALID_ARGUMENT = 2,
  LL_STATUS_INVALID_MATERIAL = 3,
  LL_STATUS_DEGENERATE_BIMATERIAL = 4,
  LL_STATUS_GAMMA_POLE = 5,
  LL_STATUS_BRANCH_CUT = 6,
  LL_STATUS_POLE_ON_CONTOUR = 7,
  LL_STATUS_QUADRATURE_NON_CONVERGENCE = 8,
  LL_STATUS_LAMBDA_DEPENDENCE = 9,
  LL_STATUS_EXTRAPOLATION_UNSTABLE = 10,
  LL_STATUS_LOAD_DECAY_TOO_SLOW = 11,
  LL_STATUS_NON_REAL_OUTPUT = 12,
  LL_STATUS_PANIC = 99,
} LlStatus;

/**
 * Precomputed h_kp kernels for one material pair.
 */
typedef struct LlKernel LlKernel;

/**
 * Material pair with its derived constants.
 */
typedef struct LlMaterial LlMaterial;

typedef struct LlScalars {
  double b;
  double d;
  double e;
  double epsilon;
  double d_star;
  double e_star;
  double nu_composite;
  double eta;
  /**
   * 1 if the half-spaces were exchanged so that d >= 0.
   */
  int32_t swapped;
} LlScalars;

/**
 * A complex number as two doubles.
 */
typedef struct LlComplex {
  double re;
  double im;
} LlComplex;

typedef struct LlConstants {
  struct LlComplex gamma_plus;
  struct LlComplex gamma_minus;
  struct LlComplex gamma_iii;
  struct LlComplex gamma_z;
  double gamma;
} LlConstants;

typedef struct LlBaseline {
  struct LlComplex k;
  double k_iii;
  struct LlComplex dk_da;
  double dkiii_da;
  double delta;
} LlBaseline;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length, 0 if none.
 */
size_t ll_last_error(char *buf, size_t len);

enum LlStatus ll_material_new(double nu_plus,
                              double mu_plus,
                              double nu_minus,
                              double mu_minus,
                              struct LlMaterial **out);

void ll_material_free(struct LlMaterial *m);

enum LlStatus ll_material_scalars(const struct LlMaterial *m, struct LlScalars *out);

enum LlStatus ll_constants_exact(const struct LlMaterial *m, struct LlConstants *out);

enum LlStatus ll_constants_asymptotic(double epsilon, double nu, struct LlConstants *out);

/**
 * γ recovered by Fourier inversion. Takes several seconds.
 */
enum LlStatus ll_gamma_via_inversion(const struct LlMaterial *m, double *out);

/**
 * Exact transforms of weight function `j` (1..3) at real ξ for sign λ = `sign`.
 * `out` receives six complex values (U₁, U₂, U₃, Σ₁₂, Σ₂₂, Σ₃₂).
 */
enum LlStatus ll_weight_eval(const struct LlMaterial *m,
                             uint32_t j,
                             double xi,
                             double sign,
                             struct LlComplex *out);

/**
 * ΔK and ΔK_III along a periodic front; `n` must be a power of two and
 * each output array must hold `n` doubles.
 */
enum LlStatus ll_perturb_front(const struct LlMaterial *m,
                               const double *profile,
                               size_t n,
                               double length,
                               const struct LlBaseline *baseline,
                               double *dk_re,
                               double *dk_im,
                               double *dk_iii);

/**
 * Builds the h_kp kernels with default grids. Takes several seconds.
 */
enum LlStatus ll_kernel_new(const struct LlMaterial *m, struct LlKernel **out);

void ll_kernel_free(struct LlKernel *k);

/**
 * h_kp(x, t) with 1-based indices k, p.
 */
enum LlStatus ll_kernel_eval(const struct LlKernel *kern,
                             uint32_t k,
                             uint32_t p,
                             double x,
                             double t,
                             struct LlComplex *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LLCRACK_H */
