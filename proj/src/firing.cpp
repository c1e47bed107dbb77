#include "firing.hpp"

#include <algorithm>
#include <cmath>

#include "apnorms.hpp"
#include "integrate.hpp"

namespace apfire {

namespace {

// Crossing threshold with a small relative allowance so that charges that
// reach 1 exactly in real arithmetic are not missed to rounding.
constexpr double kThreshold = 1.0 - 1e-12;

// Largest exponent the charge kernel may reach; beyond it e^{sigma s}
// arithmetic degrades, and any model of interest has fired long before.
constexpr double kMaxExponent = 650.0;

}  // namespace

FiringModel::FiringModel(double sigma_, SignalPtr input_)
    : sigma(sigma_), input(std::move(input_)) {
  if (!(sigma >= 0)) throw std::invalid_argument("FiringModel: sigma must be >= 0");
  if (!input) throw std::invalid_argument("FiringModel: null input");
  drive = sigma == 0.0 ? input : Signal::sum({input, Signal::constant(-sigma)});
}

double SolveConfig::effective_horizon(double sigma) const {
  double h = horizon;
  if (varsigma && *varsigma > 0) h = 1.0 / *varsigma + scan_step;
  if (sigma > 0) h = std::min(h, kMaxExponent / sigma);
  return h;
}

double charge(const FiringModel &model, double t, double s, const SolveConfig &cfg) {
  if (!(t <= s)) throw std::invalid_argument("charge: need t <= s");
  return kernel_integral(*model.drive, model.sigma, t, t, s, cfg.quad_tol).value;
}

FireResult fire(const FiringModel &model, double t, const SolveConfig &cfg) {
  if (!std::isfinite(t)) throw std::invalid_argument("fire: non-finite start");
  if (!(cfg.scan_step > 0) || !(cfg.time_tol > 0) || !(cfg.horizon > 0))
    throw std::invalid_argument("fire: solver parameters must be positive");
  const double horizon = cfg.effective_horizon(model.sigma);
  const double h = cfg.scan_step;
  const double sigma = model.sigma;
  const Signal &drive = *model.drive;

  auto fresh_charge = [&](double s) {
    return kernel_integral(drive, sigma, t, t, s, cfg.quad_tol).value;
  };

  // Forward scan with incremental accumulation: charge(t, s+h) extends
  // charge(t, s) by the local integral re-anchored at s.
  double acc = 0.0;
  double s_prev = t;
  double bracket_lo = t, bracket_hi = t;
  bool bracketed = false;
  long long steps = static_cast<long long>(std::ceil(horizon / h));
  for (long long k = 1; k <= steps && !bracketed; ++k) {
    double s = (k == steps) ? t + horizon : t + static_cast<double>(k) * h;
    if (s <= s_prev) s = std::nextafter(s_prev, std::numeric_limits<double>::infinity());
    double local = kernel_integral(drive, sigma, s_prev, s_prev, s, cfg.quad_tol).value;
    double factor = sigma == 0.0 ? 1.0 : std::exp(sigma * (s_prev - t));
    acc += factor * local;
    if (!std::isfinite(acc))
      throw QuadratureError("fire: charge accumulation lost precision");
    if (acc >= kThreshold) {
      // Re-check against a from-scratch evaluation before refining.
      if (fresh_charge(s) >= kThreshold) {
        bracket_lo = s_prev;
        bracket_hi = s;
        bracketed = true;
      } else {
        acc = fresh_charge(s);
      }
    }
    s_prev = s;
  }
  if (!bracketed) throw HorizonError(t, horizon);

  while (bracket_hi - bracket_lo > cfg.time_tol) {
    double mid = 0.5 * (bracket_lo + bracket_hi);
    if (mid <= bracket_lo || mid >= bracket_hi) break;
    if (fresh_charge(mid) >= kThreshold)
      bracket_hi = mid;
    else
      bracket_lo = mid;
  }
  double result = bracket_hi;
  return {result, std::abs(fresh_charge(result) - 1.0)};
}

double displacement(const FiringModel &model, double t, const SolveConfig &cfg) {
  return fire(model, t, cfg).time - t;
}

FiringTrajectory trajectory(const FiringModel &model, double t0, int n,
                            const SolveConfig &cfg) {
  if (n < 1) throw std::invalid_argument("trajectory: need n >= 1");
  FiringTrajectory out;
  out.t0 = t0;
  out.spikes.reserve(static_cast<std::size_t>(n));
  out.residuals.reserve(static_cast<std::size_t>(n));
  double t = t0;
  for (int i = 0; i < n; ++i) {
    try {
      FireResult r = fire(model, t, cfg);
      out.spikes.push_back(r.time);
      out.residuals.push_back(r.residual);
      t = r.time;  // the spike is reused exactly as the next start
    } catch (const HorizonError &e) {
      out.error = e.what();
      out.error_index = i;
      break;
    }
  }
  return out;
}

RateEstimate firing_rate(const FiringModel &model, double t0, int n,
                         const SolveConfig &cfg) {
  if (n < 2) throw std::invalid_argument("firing_rate: need n >= 2");
  FiringTrajectory traj = trajectory(model, t0, n, cfg);
  if (traj.error)
    throw HorizonError(traj.spikes.empty() ? t0 : traj.spikes.back(),
                       cfg.effective_horizon(model.sigma));
  RateEstimate est;
  est.sequence.reserve(traj.spikes.size());
  for (std::size_t k = 0; k < traj.spikes.size(); ++k)
    est.sequence.push_back(static_cast<double>(k + 1) / traj.spikes[k]);
  est.estimate = est.sequence.back();
  return est;
}

double rotation_number(const FiringModel &model, double t0, int n,
                       const SolveConfig &cfg) {
  if (n < 1) throw std::invalid_argument("rotation_number: need n >= 1");
  FiringTrajectory traj = trajectory(model, t0, n, cfg);
  if (traj.error)
    throw HorizonError(traj.spikes.empty() ? t0 : traj.spikes.back(),
                       cfg.effective_horizon(model.sigma));
  return (traj.spikes.back() - t0) / static_cast<double>(n);
}

ProbeVerdict well_defined_probe(const FiringModel &model, double t_max,
                                const SolveConfig &cfg) {
  if (!(t_max > 0)) throw std::invalid_argument("well_defined_probe: t_max must be > 0");
  // Spikes from 0 reaching t_max mean the running charge cleared one
  // threshold per firing all the way out.
  SolveConfig probe_cfg = cfg;
  probe_cfg.horizon = std::min(cfg.horizon, t_max);
  bool spiking_ok = true;
  double t = 0.0;
  const int max_spikes = 200000;
  int count = 0;
  while (t < t_max) {
    try {
      t = fire(model, t, probe_cfg).time;
    } catch (const HorizonError &) {
      spiking_ok = false;
      break;
    } catch (const QuadratureError &) {
      spiking_ok = false;
      break;
    }
    if (++count >= max_spikes) break;
  }
  if (spiking_ok && count > 0) return ProbeVerdict::LikelyDefined;

  // Secondary evidence: a convergent empirical mean above sigma.
  std::vector<double> schedule;
  for (int i = 5; i >= 0; --i) schedule.push_back(t_max / std::pow(2.0, i));
  MeanEstimate mean = estimate_mean(*model.input, schedule, 1e-3, 3, cfg.quad_tol);
  if (mean.verdict == MeanVerdict::Converged && mean.limit > model.sigma + 1e-2)
    return ProbeVerdict::LikelyDefined;
  return ProbeVerdict::Unknown;
}

}  // namespace apfire
