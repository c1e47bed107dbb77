#include "apnorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "integrate.hpp"

namespace apfire {

namespace {

// |f|^p over [a, b]: exact piecewise sums when p == 1 and pieces exist,
// adaptive quadrature otherwise.
double abs_power_integral(const Signal &f, double p, double a, double b,
                          double quad_tol) {
  if (p == 1.0) {
    auto pieces = extract_pieces(f, a, b);
    if (pieces) {
      double total = 0.0;
      for (const auto &pc : *pieces) {
        double lo = pc.x0, hi = pc.x1;
        if (hi <= lo) continue;
        double v0 = pc.value0, v1 = pc.value_at(hi);
        if (pc.slope != 0.0 && ((v0 < 0) != (v1 < 0))) {
          double xz = lo + (0.0 - v0) / pc.slope;  // sign change inside
          total += 0.5 * std::abs(v0) * (xz - lo) + 0.5 * std::abs(v1) * (hi - xz);
        } else {
          total += 0.5 * (std::abs(v0) + std::abs(v1)) * (hi - lo);
        }
      }
      return total;
    }
  }
  return adaptive_simpson(
             [&](double u) { return std::pow(std::abs(f.eval(u)), p); }, a, b, quad_tol)
      .value;
}

std::vector<double> anchor_grid(const Window &w, int per_unit) {
  if (per_unit < 1) throw std::invalid_argument("anchor grid: density must be >= 1");
  std::vector<double> grid;
  // Lattice-aligned anchors (i / per_unit) so every integer in [a, b] is one.
  long long i0 = static_cast<long long>(std::ceil(w.a * per_unit - 1e-9));
  long long i1 = static_cast<long long>(std::floor(w.b * per_unit + 1e-9));
  if (i0 > i1) return {w.a};
  grid.reserve(static_cast<std::size_t>(i1 - i0 + 1) + 2);
  if (static_cast<double>(i0) / per_unit > w.a) grid.push_back(w.a);
  for (long long i = i0; i <= i1; ++i)
    grid.push_back(static_cast<double>(i) / per_unit);
  if (grid.back() < w.b) grid.push_back(w.b);
  return grid;
}

}  // namespace

double stepanov_norm(const Signal &f, const NormParams &params, double quad_tol) {
  if (!(params.p >= 1.0)) throw std::invalid_argument("stepanov_norm: need p >= 1");
  if (!(params.r > 0.0)) throw std::invalid_argument("stepanov_norm: need r > 0");
  double best = 0.0;
  for (double t : anchor_grid(params.window, params.samples_per_unit)) {
    double v = abs_power_integral(f, params.p, t, t + params.r, quad_tol) / params.r;
    best = std::max(best, std::pow(v, 1.0 / params.p));
  }
  return best;
}

double d_measure_at(const Signal &f, const Signal &g, double eta, double u,
                    int samples) {
  if (!(eta > 0)) throw std::invalid_argument("d_measure: need eta > 0");
  auto diff = Signal::sum({f.shared_from_this(), Signal::scale(-1.0, g.shared_from_this())});
  auto pieces = extract_pieces(*diff, u, u + 1.0);
  if (pieces) {
    // Exact measure of {|d| >= eta} for a piecewise-affine difference d.
    double measure = 0.0;
    for (const auto &pc : *pieces) {
      double lo = pc.x0, hi = pc.x1;
      if (hi <= lo) continue;
      if (pc.slope == 0.0) {
        if (std::abs(pc.value0) >= eta) measure += hi - lo;
        continue;
      }
      // On an affine piece, {|d| >= eta} is the complement of the open band
      // d in (-eta, eta); at most one subinterval maps into the band.
      double x_lo = lo + (-eta - pc.value0) / pc.slope;
      double x_hi = lo + (eta - pc.value0) / pc.slope;
      if (x_lo > x_hi) std::swap(x_lo, x_hi);
      double band_lo = std::clamp(x_lo, lo, hi);
      double band_hi = std::clamp(x_hi, lo, hi);
      measure += (hi - lo) - (band_hi - band_lo);
    }
    return measure;
  }
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    double x = u + (i + 0.5) / samples;
    if (std::abs(diff->eval(x)) >= eta) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

double d_measure(const Signal &f, const Signal &g, double eta, const Window &window,
                 int anchors_per_unit, int samples) {
  double best = 0.0;
  for (double u : anchor_grid(window, anchors_per_unit))
    best = std::max(best, d_measure_at(f, g, eta, u, samples));
  return best;
}

double f_norm_prime(const Signal &f, const Window &window, int anchors_per_unit,
                    double quad_tol) {
  double best = 0.0;
  for (double u : anchor_grid(window, anchors_per_unit)) {
    auto pieces = extract_pieces(f, u, u + 1.0);
    double v;
    if (pieces) {
      v = 0.0;
      for (const auto &pc : *pieces) {
        if (pc.x1 <= pc.x0) continue;
        if (pc.slope == 0.0) {
          double av = std::abs(pc.value0);
          v += (pc.x1 - pc.x0) * av / (1.0 + av);
        } else {
          // int |d|/(1+|d|) = len - int 1/(1+|d|); the latter integrates to
          // log(1+|d|)/|slope| between sign-consistent endpoints.
          double lo = pc.x0, hi = pc.x1;
          double xz = lo + (0.0 - pc.value0) / pc.slope;
          auto segment = [&](double s0, double s1) {
            if (s1 <= s0) return 0.0;
            double d0 = std::abs(pc.value_at(s0)), d1 = std::abs(pc.value_at(s1));
            double len = s1 - s0;
            return len - std::abs(std::log1p(d1) - std::log1p(d0)) / std::abs(pc.slope);
          };
          if (xz > lo && xz < hi)
            v += segment(lo, xz) + segment(xz, hi);
          else
            v += segment(lo, hi);
        }
      }
    } else {
      v = adaptive_simpson(
              [&](double x) {
                double d = std::abs(f.eval(x));
                return d / (1.0 + d);
              },
              u, u + 1.0, quad_tol)
              .value;
    }
    best = std::max(best, v);
  }
  return best;
}

AlmostPeriodScan scan_periods(const Signal &f, const ScanParams &params,
                              const std::vector<double> &taus, double quad_tol) {
  if (!(params.eps > 0)) throw std::invalid_argument("scan_periods: need eps > 0");
  AlmostPeriodScan out;
  out.taus = taus;
  out.deviations.resize(taus.size());
  out.accepted.resize(taus.size());
  SignalPtr self = f.shared_from_this();

  for (std::size_t i = 0; i < taus.size(); ++i) {
    double tau = taus[i];
    double dev = 0.0;
    switch (params.mode) {
      case ScanMode::Uniform: {
        long long count = std::llround(params.window.length() * params.samples_per_unit);
        count = std::max(count, 8LL);
        for (long long k = 0; k <= count; ++k) {
          double t = params.window.a + params.window.length() * k / count;
          dev = std::max(dev, std::abs(f.eval(t + tau) - f.eval(t)));
        }
        break;
      }
      case ScanMode::Stepanov: {
        auto shifted = Signal::shift(tau, self);
        auto diff = Signal::sum({shifted, Signal::scale(-1.0, self)});
        NormParams np;
        np.p = params.p;
        np.r = 1.0;
        np.window = params.window;
        np.samples_per_unit = params.samples_per_unit;
        dev = stepanov_norm(*diff, np, quad_tol);
        break;
      }
      case ScanMode::Mu: {
        auto shifted = Signal::shift(tau, self);
        dev = d_measure(*shifted, f, params.eta, params.window,
                        std::max(1, params.samples_per_unit / 16));
        break;
      }
    }
    out.deviations[i] = dev;
    out.accepted[i] = (params.mode == ScanMode::Mu) ? (dev <= params.eps)
                                                    : (dev < params.eps);
  }

  std::vector<double> acc;
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (out.accepted[i]) acc.push_back(taus[i]);
  std::sort(acc.begin(), acc.end());
  if (acc.size() < 2) {
    out.max_gap = std::numeric_limits<double>::infinity();
  } else {
    out.max_gap = 0.0;
    for (std::size_t i = 1; i < acc.size(); ++i)
      out.max_gap = std::max(out.max_gap, acc[i] - acc[i - 1]);
  }
  return out;
}

MeanEstimate estimate_mean(const Signal &f, const std::vector<double> &schedule,
                           double tol, int trailing, double quad_tol) {
  if (schedule.empty()) throw std::invalid_argument("estimate_mean: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0)) throw std::invalid_argument("estimate_mean: T must be > 0");
    if (i > 0 && !(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("estimate_mean: schedule must increase strictly");
  }
  MeanEstimate out;
  out.schedule = schedule;
  out.partials.reserve(schedule.size());
  // Incremental prefix integrals: the schedule is increasing.
  double prev_T = 0.0, prefix = 0.0;
  for (double T : schedule) {
    prefix += integrate(f, prev_T, T, quad_tol).value;
    prev_T = T;
    out.partials.push_back(prefix / T);
  }

  const std::size_t n = schedule.size();
  int k = std::max(2, trailing);
  if (n >= static_cast<std::size_t>(k)) {
    double lo = out.partials[n - k], hi = lo;
    for (std::size_t i = n - k; i < n; ++i) {
      lo = std::min(lo, out.partials[i]);
      hi = std::max(hi, out.partials[i]);
    }
    if (hi - lo <= tol) {
      out.verdict = MeanVerdict::Converged;
      out.limit = out.partials.back();
      return out;
    }
  }
  // Oscillation witness: a separated pair in the upper half of the schedule.
  std::size_t median = n / 2;
  for (std::size_t i = median; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(out.partials[i] - out.partials[j]) > tol) {
        out.verdict = MeanVerdict::Oscillating;
        out.witness_lo = i;
        out.witness_hi = j;
        return out;
      }
    }
  }
  out.verdict = MeanVerdict::Inconclusive;
  return out;
}

double antiderivative_residual(const Signal &f, double m, const Window &window,
                               int samples_per_unit, double quad_tol) {
  long long count =
      std::max(8LL, std::llround(window.length() * samples_per_unit));
  double best = 0.0;
  // March the antiderivative across the grid incrementally from 0.
  double t0 = window.a;
  double F = t0 >= 0 ? integrate(f, 0.0, t0, quad_tol).value
                     : -integrate(f, t0, 0.0, quad_tol).value;
  best = std::abs(F - m * t0);
  double prev = t0;
  for (long long k = 1; k <= count; ++k) {
    double t = window.a + window.length() * k / count;
    F += integrate(f, prev, t, quad_tol).value;
    prev = t;
    best = std::max(best, std::abs(F - m * t));
  }
  return best;
}

}  // namespace apfire
