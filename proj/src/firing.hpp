// Leaky integrate-and-fire engine: the threshold-normalized model
// x' = -sigma x + f(t) with reset to 0 at threshold 1, its first-crossing
// map, displacement, spike trains, and rate / rotation-number estimators.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signal.hpp"

namespace apfire {

struct FiringModel {
  double sigma;     // leak rate, >= 0; 0 is the perfect integrator
  SignalPtr input;  // forcing term f
  SignalPtr drive;  // cached f - sigma, integrated against the charge kernel

  FiringModel(double sigma_, SignalPtr input_);
};

struct SolveConfig {
  double scan_step = 1e-3;  // forward scan resolution h
  double time_tol = 1e-10;  // bisection stopping width
  double horizon = 1e3;     // maximum displacement searched
  double quad_tol = 1e-10;
  std::optional<double> varsigma;  // known a.e. lower bound of f - sigma

  // varsigma bounds the displacement by 1/varsigma, which overrides the
  // horizon (plus one scan step of slack for the boundary case).
  double effective_horizon(double sigma) const;
};

class HorizonError : public std::runtime_error {
public:
  HorizonError(double t, double horizon)
      : std::runtime_error("no threshold crossing in (t, t+H]; the firing time may "
                           "be undefined"),
        t_(t), horizon_(horizon) {}
  double start() const { return t_; }
  double horizon() const { return horizon_; }

private:
  double t_;
  double horizon_;
};

struct FireResult {
  double time;      // first s with charge(t, s) >= 1, located to time_tol
  double residual;  // |charge(t, time) - 1|
};

struct FiringTrajectory {
  double t0;
  std::vector<double> spikes;     // Phi(t0), Phi^2(t0), ...
  std::vector<double> residuals;  // per-solve implicit-equation residual
  std::optional<std::string> error;  // set when a solve failed; spikes holds the prefix
  int error_index = -1;
};

struct RateEstimate {
  double estimate;               // n / Phi^n(t0)
  std::vector<double> sequence;  // k / Phi^k(t0), k = 1..n
};

enum class ProbeVerdict { LikelyDefined, Unknown };

/// Charge accumulated between reset at t and candidate time s:
/// int_t^s (f(u)-sigma) e^{sigma(u-t)} du. Firing occurs when it reaches 1.
double charge(const FiringModel &model, double t, double s, const SolveConfig &cfg);

/// First threshold crossing after t: forward scan in steps of scan_step to
/// bracket the first up-crossing, then bisection to width time_tol.
/// Throws HorizonError when the charge stays below threshold on the whole
/// search interval.
FireResult fire(const FiringModel &model, double t, const SolveConfig &cfg);

/// Waiting time to the next spike, fire(t) - t.
double displacement(const FiringModel &model, double t, const SolveConfig &cfg);

/// n successive firings; on failure the partial trajectory is returned with
/// the error recorded instead of thrown.
FiringTrajectory trajectory(const FiringModel &model, double t0, int n,
                            const SolveConfig &cfg);

/// Sequence k/Phi^k(t0) and the final estimate. Solver errors propagate.
RateEstimate firing_rate(const FiringModel &model, double t0, int n,
                         const SolveConfig &cfg);

/// Average displacement (Phi^n(t0) - t0) / n.
double rotation_number(const FiringModel &model, double t0, int n,
                       const SolveConfig &cfg);

/// Heuristic check that the firing map is defined everywhere: spikes from 0
/// must keep occurring up to t_max (charge repeatedly clears increasing
/// thresholds), or the input's empirical mean must exceed sigma by a clear
/// margin. Never claims undefinedness.
ProbeVerdict well_defined_probe(const FiringModel &model, double t_max,
                                const SolveConfig &cfg);

}  // namespace apfire
