#include "haar.hpp"

#include <algorithm>
#include <cmath>

#include "integrate.hpp"

namespace apfire {

namespace {

struct WaveletGeometry {
  int m;          // dyadic level
  int r;          // position, 1..2^m
  double lo;      // support start within the cell
  double mid;     // sign change
  double hi;      // support end
  double height;  // 2^{m/2}
};

WaveletGeometry geometry(int j) {
  if (j < 2) throw std::invalid_argument("haar: geometry only for j >= 2");
  int m = 0;
  while ((2 << m) <= j - 1) ++m;  // largest m with 2^m < j
  int r = j - (1 << m);
  double scale = std::ldexp(1.0, -m);  // 2^{-m}
  WaveletGeometry g;
  g.m = m;
  g.r = r;
  g.lo = (r - 1) * scale;
  g.mid = (2 * r - 1) * scale * 0.5;
  g.hi = r * scale;
  g.height = std::ldexp(1.0, m / 2) * (m % 2 ? std::sqrt(2.0) : 1.0);
  return g;
}

}  // namespace

double haar_value(const HaarIndex &idx, double t) {
  if (idx.j < 1) throw std::invalid_argument("haar_value: need j >= 1");
  double x = t - static_cast<double>(idx.k);
  if (x < 0.0 || x >= 1.0) return 0.0;
  if (idx.j == 1) return 1.0;
  WaveletGeometry g = geometry(idx.j);
  if (x < g.lo || x >= g.hi) return 0.0;
  return x < g.mid ? g.height : -g.height;
}

double HaarCoefficients::at(long long k, int j) const {
  if (k < k0_ || k > k1_ || j < 1 || j > n_)
    throw OutOfWindowError("haar coefficient index outside the table");
  return table_[static_cast<std::size_t>(k - k0_) * n_ + (j - 1)];
}

double HaarCoefficients::project(double t) const {
  double fk = std::floor(t);
  long long k = static_cast<long long>(fk);
  if (k < k0_ || k > k1_)
    throw OutOfWindowError("haar projection evaluated outside the coefficient window");
  double x = t - fk;
  double acc = at(k, 1);
  for (int j = 2; j <= n_; ++j) {
    WaveletGeometry g = geometry(j);
    if (x < g.lo || x >= g.hi) continue;
    acc += at(k, j) * (x < g.mid ? g.height : -g.height);
  }
  return acc;
}

HaarCoefficients haar_coefficients(const Signal &f, long long k0, long long k1, int n,
                                   double quad_tol) {
  if (k0 > k1) throw std::invalid_argument("haar_coefficients: need k0 <= k1");
  if (n < 1) throw std::invalid_argument("haar_coefficients: need n >= 1");
  std::vector<double> table(static_cast<std::size_t>(k1 - k0 + 1) * n);
  for (long long k = k0; k <= k1; ++k) {
    double base = static_cast<double>(k);
    std::size_t row = static_cast<std::size_t>(k - k0) * n;
    table[row] = integrate(f, base, base + 1.0, quad_tol).value;
    for (int j = 2; j <= n; ++j) {
      WaveletGeometry g = geometry(j);
      double pos = integrate(f, base + g.lo, base + g.mid, quad_tol).value;
      double neg = integrate(f, base + g.mid, base + g.hi, quad_tol).value;
      table[row + j - 1] = g.height * (pos - neg);
    }
  }
  return HaarCoefficients(k0, k1, n, std::move(table));
}

namespace {

// |f - c|^p over [a, b] with c constant: exact piece sums at p = 1, adaptive
// quadrature otherwise.
double abs_diff_power(const Signal &f, double c, double p, double a, double b,
                      double quad_tol) {
  if (p == 1.0) {
    auto pieces = extract_pieces(f, a, b);
    if (pieces) {
      double total = 0.0;
      for (const auto &pc : *pieces) {
        double lo = pc.x0, hi = pc.x1;
        if (hi <= lo) continue;
        double v0 = pc.value0 - c, v1 = pc.value_at(hi) - c;
        if (pc.slope != 0.0 && ((v0 < 0) != (v1 < 0))) {
          double xz = lo - v0 / pc.slope;
          total += 0.5 * std::abs(v0) * (xz - lo) + 0.5 * std::abs(v1) * (hi - xz);
        } else {
          total += 0.5 * (std::abs(v0) + std::abs(v1)) * (hi - lo);
        }
      }
      return total;
    }
  }
  return adaptive_simpson(
             [&](double u) { return std::pow(std::abs(f.eval(u) - c), p); }, a, b,
             quad_tol)
      .value;
}

int projection_levels(int n) {
  // Finest dyadic level used by wavelets j <= n.
  if (n <= 1) return 0;
  int m = 0;
  while ((2 << m) <= n - 1) ++m;
  return m + 1;
}

}  // namespace

double projection_error(const Signal &f, int n, double p, long long k0, long long k1,
                        double quad_tol) {
  if (!(p >= 1.0)) throw std::invalid_argument("projection_error: need p >= 1");
  HaarCoefficients coeffs = haar_coefficients(f, k0, k1, n, quad_tol);
  int levels = projection_levels(n);
  long long slots = 1LL << levels;
  double width = std::ldexp(1.0, -levels);
  double worst = 0.0;
  for (long long k = k0; k <= k1; ++k) {
    double cell_total = 0.0;
    double base = static_cast<double>(k);
    for (long long s = 0; s < slots; ++s) {
      double lo = base + static_cast<double>(s) * width;
      double hi = lo + width;
      // P_n f is constant on each finest dyadic slot.
      double c = coeffs.project(lo + 0.5 * width);
      cell_total += abs_diff_power(f, c, p, lo, hi, quad_tol);
    }
    worst = std::max(worst, std::pow(cell_total, 1.0 / p));
  }
  return worst;
}

ModulusBound modulus_bound_check(const Signal &f, int n, double p, long long k0,
                                 long long k1, double quad_tol, double tol) {
  ModulusBound out;
  out.lhs = projection_error(f, n, p, k0, k1, quad_tol);

  SignalPtr self = f.shared_from_this();
  double sup = 0.0;
  const int kSamples = 32;  // log-spaced shifts in (0, 1/n]
  for (int i = 0; i < kSamples; ++i) {
    double h = (1.0 / n) * std::pow(2.0, -static_cast<double>(i) * 10.0 / kSamples);
    auto diff = Signal::sum({Signal::shift(h, self), Signal::scale(-1.0, self)});
    double worst = 0.0;
    for (long long k = k0; k <= k1; ++k) {
      double base = static_cast<double>(k);
      double v = 0.0;
      if (p == 1.0) {
        v = abs_diff_power(*diff, 0.0, 1.0, base, base + 1.0, quad_tol);
      } else {
        v = adaptive_simpson(
                [&](double u) { return std::pow(std::abs(diff->eval(u)), p); }, base,
                base + 1.0, quad_tol)
                .value;
      }
      worst = std::max(worst, std::pow(v, 1.0 / p));
    }
    sup = std::max(sup, worst);
  }
  out.rhs = 24.0 * sup;
  out.holds = out.lhs <= out.rhs + tol;
  return out;
}

}  // namespace apfire
