// Empirical almost-periodicity metrics: the sliding-window Stepanov
// seminorm, the measure deviation between two signals, the F-norm metrizing
// convergence in measure, almost-period scanning with gap reporting, mean
// value estimation with oscillation detection, and the centered
// antiderivative residual.
//
// Every supremum over the real line is reported as a maximum over a
// disclosed finite grid: the results are lower bounds of the true suprema,
// suitable for probing the theory, never for certifying it.
#pragma once

#include <optional>
#include <vector>

#include "signal.hpp"

namespace apfire {

struct NormParams {
  double p = 1.0;             // exponent, >= 1
  double r = 1.0;             // window length, > 0
  Window window{0.0, 1.0};    // anchor range for the grid supremum
  int samples_per_unit = 64;  // anchor grid density
};

/// Grid maximum over anchors t of ((1/r) int_t^{t+r} |f|^p)^{1/p}.
double stepanov_norm(const Signal &f, const NormParams &params, double quad_tol = 1e-10);

/// mu{ x in [u, u+1] : |f - g| >= eta }. Exact (interval arithmetic) when
/// f - g admits a piecewise-affine view on [u, u+1]; otherwise estimated by
/// subsampling with `samples` points.
double d_measure_at(const Signal &f, const Signal &g, double eta, double u,
                    int samples = 4096);

/// Grid maximum of d_measure_at over anchors in [window.a, window.b].
/// Anchors are aligned so that every integer in the window is included.
double d_measure(const Signal &f, const Signal &g, double eta, const Window &window,
                 int anchors_per_unit = 16, int samples = 4096);

/// Grid maximum over anchors u of int_u^{u+1} |f| / (1 + |f|).
double f_norm_prime(const Signal &f, const Window &window, int anchors_per_unit = 16,
                    double quad_tol = 1e-10);

enum class ScanMode { Uniform, Stepanov, Mu };

struct ScanParams {
  ScanMode mode = ScanMode::Uniform;
  double eps = 0.0;            // acceptance level
  double p = 1.0;              // Stepanov exponent (Stepanov mode)
  double eta = 0.0;            // deviation level (mu mode)
  Window window{0.0, 1.0};     // where deviations are sampled
  int samples_per_unit = 256;  // t-grid density (uniform) / anchor density
};

struct AlmostPeriodScan {
  std::vector<double> taus;
  std::vector<double> deviations;
  std::vector<bool> accepted;  // strict < eps (uniform/Stepanov), <= eps (mu)
  double max_gap = 0.0;        // infinity when fewer than two accepted
};

AlmostPeriodScan scan_periods(const Signal &f, const ScanParams &params,
                              const std::vector<double> &taus,
                              double quad_tol = 1e-10);

enum class MeanVerdict { Converged, Oscillating, Inconclusive };

struct MeanEstimate {
  std::vector<double> schedule;
  std::vector<double> partials;  // M_T = (1/T) int_0^T f
  MeanVerdict verdict = MeanVerdict::Inconclusive;
  double limit = 0.0;            // last partial, when converged
  std::size_t witness_lo = 0;    // indices of a separated pair, when oscillating
  std::size_t witness_hi = 0;
};

/// Cesaro partials along an increasing positive schedule. Converged when the
/// trailing `trailing` partials agree pairwise within tol; oscillating when a
/// pair (T1, T2) with T2 > T1 >= median separates by more than tol.
MeanEstimate estimate_mean(const Signal &f, const std::vector<double> &schedule,
                           double tol = 1e-3, int trailing = 3,
                           double quad_tol = 1e-10);

/// Grid maximum over t in the window of |int_0^t f - m t|.
double antiderivative_residual(const Signal &f, double m, const Window &window,
                               int samples_per_unit = 64, double quad_tol = 1e-10);

}  // namespace apfire
