/* apfire -- public C interface of the almost-periodic integrate-and-fire
 * library.
 *
 * The library is implemented in C++; this header is the stable ABI consumed
 * by the command-line tool and by foreign-language bindings.  All objects
 * are opaque handles created and destroyed by the library.  Every function
 * that can fail returns an apf_status; the message for the most recent
 * failure on the calling thread is available via apf_last_error().
 */
#ifndef APFIRE_H
#define APFIRE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define APF_API __declspec(dllexport)
#else
#define APF_API __attribute__((visibility("default")))
#endif

typedef struct apf_signal apf_signal;
typedef struct apf_model apf_model;
typedef struct apf_haar apf_haar;

typedef enum apf_status {
  APF_OK = 0,
  APF_ERR_USAGE = 1,      /* bad argument, parse error, precondition violation */
  APF_ERR_HORIZON = 2,    /* no threshold crossing within the search horizon */
  APF_ERR_QUADRATURE = 3  /* adaptive quadrature failed to reach tolerance */
} apf_status;

/* Message for the most recent failing call on this thread. */
APF_API const char *apf_last_error(void);

/* ---- signals ------------------------------------------------------- */

/* Build a signal from a JSON document.  Supported kinds:
 *   {"kind":"const","value":c}
 *   {"kind":"trig","terms":[[a,b,lambda],...]}        a*sin(l t)+b*cos(l t)
 *   {"kind":"piecewise_periodic","period":w,"pieces":[[x0,v0],[x1,v1],...]}
 *   {"kind":"dyadic","name":"mu_no_mu"|"meanless_series"|
 *                          "unbounded_mean_series"|"alternating_offsets"
 *                          [,"terms":k]}
 *   {"kind":"exp","coeff":a,"rate":b}                 a*e^{b t} (quadrature)
 *   {"kind":"sum","children":[...]}
 *   {"kind":"scale","factor":c,"child":...}
 *   {"kind":"shift","tau":t,"child":...}
 *   {"kind":"clamp","limit":N,"child":...}            truncation to [-N,N]
 */
APF_API apf_signal *apf_signal_from_json(const char *json_text);

/* Compiled-in example signals: ex4_3, ex3_3, ex3_4, ex4_12 (alias mu_no_mu),
 * ex4_13, ex6_4, ex6_13_f, ex6_13_g. */
APF_API apf_signal *apf_signal_preset(const char *name);

APF_API void apf_signal_free(apf_signal *sig);

APF_API apf_status apf_signal_eval(const apf_signal *sig, double t, double *out);

APF_API apf_status apf_signal_integrate(const apf_signal *sig, double a, double b,
                                        double tol, double *value, double *err_bound);

/* Weighted charge integral: int_t^s (f(u)-sigma) e^{sigma (u-t)} du. */
APF_API apf_status apf_signal_integrate_weighted(const apf_signal *sig, double sigma,
                                                 double t, double s, double tol,
                                                 double *value, double *err_bound);

/* Largest series index with support meeting [a,b] (dyadic signals; 0 for
 * other signal kinds). */
APF_API apf_status apf_signal_active_terms(const apf_signal *sig, double a, double b,
                                           int *out);

APF_API apf_signal *apf_signal_shift(const apf_signal *sig, double tau);
APF_API apf_signal *apf_signal_scale(const apf_signal *sig, double factor);
APF_API apf_signal *apf_signal_sum(const apf_signal *const *sigs, size_t count);
APF_API apf_signal *apf_signal_clamp(const apf_signal *sig, double limit);

/* ---- firing model --------------------------------------------------- */

typedef struct apf_solve_config {
  double scan_step;  /* forward scan resolution h                    */
  double time_tol;   /* bisection stopping width                     */
  double horizon;    /* maximum Phi(t)-t searched                    */
  double quad_tol;   /* quadrature tolerance for charge integrals    */
  double varsigma;   /* a.e. lower bound of f-sigma; <=0 if unknown.
                        When positive, overrides horizon by 1/varsigma. */
} apf_solve_config;

APF_API void apf_solve_config_default(apf_solve_config *cfg);

APF_API apf_model *apf_model_new(const apf_signal *input, double sigma);
APF_API void apf_model_free(apf_model *model);

APF_API apf_status apf_charge(const apf_model *model, double t, double s,
                              const apf_solve_config *cfg, double *out);

/* First threshold crossing after t.  residual (optional) receives
 * |charge(t, phi) - 1| for the returned time. */
APF_API apf_status apf_fire(const apf_model *model, double t,
                            const apf_solve_config *cfg, double *phi,
                            double *residual);

APF_API apf_status apf_displacement(const apf_model *model, double t,
                                    const apf_solve_config *cfg, double *psi);

/* n successive firings starting from t0.  spikes has room for n entries;
 * residuals may be NULL.  *n_done receives the number computed (== n on
 * success; fewer when a solve fails, in which case the partial trajectory
 * is kept and the error is returned). */
APF_API apf_status apf_trajectory(const apf_model *model, double t0, int n,
                                  const apf_solve_config *cfg, double *spikes,
                                  double *residuals, int *n_done);

/* k/Phi^k(t0) for k=1..n; sequence may be NULL; estimate = n/Phi^n(t0). */
APF_API apf_status apf_firing_rate(const apf_model *model, double t0, int n,
                                   const apf_solve_config *cfg, double *estimate,
                                   double *sequence);

APF_API apf_status apf_rotation_number(const apf_model *model, double t0, int n,
                                       const apf_solve_config *cfg, double *out);

/* Heuristic well-definedness probe: *verdict = 1 (likely defined for all t)
 * or 0 (unknown).  Never claims undefinedness. */
APF_API apf_status apf_well_defined_probe(const apf_model *model, double t_max,
                                          const apf_solve_config *cfg, int *verdict);

/* ---- empirical almost-periodicity metrics --------------------------- */

/* Grid maximum of the sliding-window Stepanov seminorm over anchors in
 * [a,b]; a lower bound of the true supremum. */
APF_API apf_status apf_stepanov_norm(const apf_signal *sig, double p, double r,
                                     double a, double b, int samples_per_unit,
                                     double *out);

/* Largest over anchors u in [a,b] of mu{ t in [u,u+1] : |f-g| >= eta }. */
APF_API apf_status apf_d_measure(const apf_signal *f, const apf_signal *g,
                                 double eta, double a, double b,
                                 int anchors_per_unit, double *out);

/* Grid maximum of int_u^{u+1} |f|/(1+|f|). */
APF_API apf_status apf_f_norm_prime(const apf_signal *sig, double a, double b,
                                    int anchors_per_unit, double *out);

typedef enum apf_scan_mode {
  APF_SCAN_UNIFORM = 0,
  APF_SCAN_STEPANOV = 1,
  APF_SCAN_MU = 2
} apf_scan_mode;

/* Deviation of each candidate translation and its acceptance.  For
 * stepanov mode `p` is the exponent; for mu mode `eta` is the level.
 * deviations/accepted are arrays of length count; max_gap receives the
 * largest difference between consecutive accepted taus (HUGE_VAL when
 * fewer than two are accepted). */
APF_API apf_status apf_scan_periods(const apf_signal *sig, apf_scan_mode mode,
                                    double eps, double p, double eta,
                                    const double *taus, size_t count,
                                    double a, double b, int samples_per_unit,
                                    double *deviations, int *accepted,
                                    double *max_gap);

typedef enum apf_mean_verdict {
  APF_MEAN_CONVERGED = 0,
  APF_MEAN_OSCILLATING = 1,
  APF_MEAN_INCONCLUSIVE = 2
} apf_mean_verdict;

/* Ces\`aro partials M_T = (1/T) int_0^T f for each T in the schedule.
 * partials has room for count entries.  On convergence *limit is the last
 * partial; on oscillation witness_lo/hi index the separated pair. */
APF_API apf_status apf_mean_value(const apf_signal *sig, const double *schedule,
                                  size_t count, double tol, int trailing,
                                  double *partials, int *verdict, double *limit,
                                  size_t *witness_lo, size_t *witness_hi);

/* Grid maximum over [a,b] of |int_0^t f(s) ds - m t|. */
APF_API apf_status apf_antiderivative_residual(const apf_signal *sig, double m,
                                               double a, double b,
                                               int samples_per_unit, double *out);

/* ---- Haar system ----------------------------------------------------- */

/* Value of the Haar basis function h_{k,j} at t. */
APF_API apf_status apf_haar_fn(long long k, int j, double t, double *out);

/* Haar coefficient table for cells k0..k1 and levels j=1..n. */
APF_API apf_haar *apf_haar_coefficients(const apf_signal *sig, long long k0,
                                        long long k1, int n, double quad_tol);
APF_API void apf_haar_free(apf_haar *coeffs);

APF_API apf_status apf_haar_at(const apf_haar *coeffs, long long k, int j,
                               double *out);

/* Partial Haar expansion evaluated at t (t must lie in a coefficient cell). */
APF_API apf_status apf_haar_project(const apf_haar *coeffs, double t, double *out);

/* Cellwise S^p distance between f and its level-n projection. */
APF_API apf_status apf_haar_projection_error(const apf_signal *sig, int n, double p,
                                             long long k0, long long k1,
                                             double quad_tol, double *out);

/* Projection error against the sampled smoothness bound; *holds is a
 * warning flag, not a certificate (the supremum over h is sampled). */
APF_API apf_status apf_haar_modulus_bound(const apf_signal *sig, int n, double p,
                                          long long k0, long long k1,
                                          double quad_tol, double *lhs,
                                          double *rhs, int *holds);

/* ---- verification suite ---------------------------------------------- */

/* One callback per executed check; pass != 0 on success. */
typedef void (*apf_verify_cb)(const char *id, int pass, const char *detail,
                              void *user);

/* Run the built-in verification suite.  `only` filters by substring of the
 * check id (NULL runs everything); when list_only != 0 the checks are
 * enumerated without running (pass = -1).  Returns the number of failed
 * checks. */
APF_API int apf_verify_run(const char *only, int list_only, apf_verify_cb cb,
                           void *user);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* APFIRE_H */
