#include "integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apfire {

namespace {

constexpr int kMaxDepth = 60;
constexpr long kEvalBudget = 40000000L;

struct SimpsonState {
  const std::function<double(double)> &fn;
  long evals = 0;
  double sample(double x) {
    if (++evals > kEvalBudget)
      throw QuadratureError("adaptive quadrature: evaluation budget exhausted");
    double v = fn(x);
    if (!std::isfinite(v))
      throw QuadratureError("adaptive quadrature: non-finite integrand value");
    return v;
  }
};

double simpson_rec(SimpsonState &st, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth, double &err) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = st.sample(lm), frm = st.sample(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth >= kMaxDepth)
    throw QuadratureError("adaptive quadrature: depth cap reached");
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-300) {
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, err) +
         simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, err);
}

}  // namespace

IntegralResult adaptive_simpson(const std::function<double(double)> &fn, double a,
                                double b, double tol) {
  if (a == b) return {0.0, 0.0};
  SimpsonState st{fn};
  double fa = st.sample(a), fb = st.sample(b), fm = st.sample(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double err = 0.0;
  double v = simpson_rec(st, a, b, fa, fm, fb, whole, tol, 0, err);
  return {v, std::max(err, 0.0)};
}

// ---- closed-form kernel masses -----------------------------------------

double kernel_mass(double sigma, double t, double a, double b) {
  if (sigma == 0.0) return b - a;
  return std::exp(sigma * (a - t)) * std::expm1(sigma * (b - a)) / sigma;
}

namespace {

// (e^x (x-1) + 1) / x^2 with a series fallback near zero.
double expm1_slope_factor(double x) {
  if (std::abs(x) < 1e-4) {
    return 0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0;
  }
  return (std::exp(x) * (x - 1.0) + 1.0) / (x * x);
}

// int_a^b (v0 + slope (u - a)) e^{sigma (u - t)} du
double affine_kernel_mass(double sigma, double t, double a, double b, double v0,
                          double slope) {
  double len = b - a;
  if (len <= 0) return 0.0;
  if (sigma == 0.0) return v0 * len + 0.5 * slope * len * len;
  double front = std::exp(sigma * (a - t));
  double x = sigma * len;
  double const_part = v0 * std::expm1(x) / sigma;
  double slope_part = slope * len * len * expm1_slope_factor(x);
  return front * (const_part + slope_part);
}

// int_a^b sin(l u) e^{sigma (u - t)} du
double sin_kernel_mass(double sigma, double t, double l, double a, double b) {
  if (l == 0.0) return 0.0;
  if (sigma == 0.0) return (std::cos(l * a) - std::cos(l * b)) / l;
  double denom = sigma * sigma + l * l;
  auto anti = [&](double u) {
    return std::exp(sigma * (u - t)) * (sigma * std::sin(l * u) - l * std::cos(l * u)) /
           denom;
  };
  return anti(b) - anti(a);
}

// int_a^b cos(l u) e^{sigma (u - t)} du
double cos_kernel_mass(double sigma, double t, double l, double a, double b) {
  if (l == 0.0) return kernel_mass(sigma, t, a, b);
  if (sigma == 0.0) return (std::sin(l * b) - std::sin(l * a)) / l;
  double denom = sigma * sigma + l * l;
  auto anti = [&](double u) {
    return std::exp(sigma * (u - t)) * (sigma * std::cos(l * u) + l * std::sin(l * u)) /
           denom;
  };
  return anti(b) - anti(a);
}

IntegralResult piecewise_kernel(const PiecewisePeriodicNode &n, double sigma, double t,
                                double a, double b) {
  // Walk the step function's breakpoints from a to b.
  double total = 0.0;
  double u = a;
  while (u < b) {
    double k = std::floor(u / n.period);
    double local = u - n.period * k;
    if (local >= n.period) {  // rounding at the seam: start of the next period
      k += 1.0;
      local = 0.0;
    }
    if (local < 0) local = 0.0;
    auto it = std::upper_bound(n.breaks.begin(), n.breaks.end(), local);
    double value, next;
    if (it == n.breaks.begin()) {
      value = n.values.back();
      next = n.period * k + n.breaks.front();
    } else {
      std::size_t idx = static_cast<std::size_t>(it - n.breaks.begin()) - 1;
      value = n.values[idx];
      next = (idx + 1 < n.breaks.size()) ? n.period * k + n.breaks[idx + 1]
                                         : n.period * (k + 1.0);
    }
    if (!(next > u)) next = std::nextafter(u, std::numeric_limits<double>::infinity());
    double hi = std::min(next, b);
    total += value * kernel_mass(sigma, t, u, hi);
    u = hi;
  }
  return {total, 0.0};
}

// Plain sigma == 0 integral of a periodic step function via whole-period
// counting; avoids walking breakpoints across very long windows.
double piecewise_plain(const PiecewisePeriodicNode &n, double a, double b) {
  auto upto = [&](double x) -> double {
    // int_0^x f
    double k = std::floor(x / n.period);
    double local = x - n.period * k;
    double partial = 0.0;
    if (n.breaks.front() > 0) {
      double hi = std::min(local, n.breaks.front());
      partial += n.values.back() * hi;
    }
    for (std::size_t i = 0; i < n.breaks.size() && n.breaks[i] < local; ++i) {
      double hi = (i + 1 < n.breaks.size()) ? std::min(n.breaks[i + 1], local) : local;
      partial += n.values[i] * (hi - n.breaks[i]);
    }
    return k * n.period_integral + partial;
  };
  return upto(b) - upto(a);
}

IntegralResult dyadic_kernel(const DyadicOps &ops, double sigma, double t, double a,
                             double b, double tol) {
  double total = ops.baseline() == 0.0 ? 0.0
                                       : ops.baseline() * kernel_mass(sigma, t, a, b);
  std::vector<LocalSegment> segs;
  for (int n = 1; n <= std::min(ops.max_terms, DyadicOps::kMaxIndex); ++n) {
    long long m_lo, m_hi;
    if (!ops.lattice_range(n, a, b, m_lo, m_hi)) continue;
    for (long long m = m_lo; m <= m_hi; ++m) {
      double z = ops.lattice_element(n, m);
      double lo = std::max(a, z) - z;  // exact: |z| and |a| within 2^53 scale
      double hi = std::min(b, z + 1.0) - z;
      if (hi <= lo) continue;
      if (sigma == 0.0) {
        total += ops.integral_local(n, lo, hi);
        continue;
      }
      if (ops.kind == DyadicKind::MuNoMu && n > 22)
        throw QuadratureError("weighted dyadic integral: plateau count too large");
      segs.clear();
      ops.append_segments(n, lo, hi, segs);
      for (const auto &s : segs) {
        double p0 = std::max(s.x0, lo), p1 = std::min(s.x1, hi);
        if (p1 <= p0) continue;
        double v0 = s.value0 + s.slope * (p0 - s.x0);
        total += affine_kernel_mass(sigma, t, z + p0, z + p1, v0, s.slope);
      }
    }
  }
  (void)tol;
  return {total, 0.0};
}

IntegralResult pieces_kernel(const PieceList &pieces, double sigma, double t) {
  double total = 0.0;
  for (const auto &p : pieces)
    total += affine_kernel_mass(sigma, t, p.x0, p.x1, p.value0, p.slope);
  return {total, 0.0};
}

}  // namespace

IntegralResult kernel_integral(const Signal &f, double sigma, double t, double a,
                               double b, double tol) {
  if (!(a <= b)) throw std::invalid_argument("integrate: need a <= b");
  if (!(tol > 0)) throw std::invalid_argument("integrate: tol must be positive");
  if (sigma < 0) throw std::invalid_argument("integrate: sigma must be >= 0");
  if (a == b) return {0.0, 0.0};
  return std::visit(
      [&](const auto &n) -> IntegralResult {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return {n.value == 0.0 ? 0.0 : n.value * kernel_mass(sigma, t, a, b), 0.0};
        } else if constexpr (std::is_same_v<T, TrigPolyNode>) {
          double total = 0.0;
          for (const auto &term : n.terms) {
            if (term.sin_coeff != 0.0)
              total += term.sin_coeff * sin_kernel_mass(sigma, t, term.freq, a, b);
            if (term.cos_coeff != 0.0)
              total += term.cos_coeff * cos_kernel_mass(sigma, t, term.freq, a, b);
          }
          return {total, 0.0};
        } else if constexpr (std::is_same_v<T, PiecewisePeriodicNode>) {
          if (sigma == 0.0) return {piecewise_plain(n, a, b), 0.0};
          return piecewise_kernel(n, sigma, t, a, b);
        } else if constexpr (std::is_same_v<T, DyadicNode>) {
          return dyadic_kernel(dyadic_ops(n), sigma, t, a, b, tol);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          double total = 0.0, err = 0.0;
          for (const auto &c : n.children) {
            IntegralResult r = kernel_integral(*c, sigma, t, a, b, tol);
            total += r.value;
            err += r.err_bound;
          }
          return {total, err};
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          IntegralResult r = kernel_integral(*n.child, sigma, t, a, b, tol);
          return {n.factor * r.value, std::abs(n.factor) * r.err_bound};
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return kernel_integral(*n.child, sigma, t + n.tau, a + n.tau, b + n.tau, tol);
        } else if constexpr (std::is_same_v<T, ClampNode>) {
          // Exact when the child admits a piecewise-affine view (the
          // extraction clamps and splits pieces at the limit crossings).
          auto pieces = extract_pieces(f, a, b);
          if (pieces) return pieces_kernel(*pieces, sigma, t);
          const Signal &self = f;
          return adaptive_simpson(
              [&](double u) {
                return self.eval(u) * (sigma == 0.0 ? 1.0 : std::exp(sigma * (u - t)));
              },
              a, b, tol);
        } else {  // ExpNode and any future quadrature-backed kinds
          const Signal &self = f;
          return adaptive_simpson(
              [&](double u) {
                double v = self.eval(u);
                if (v == 0.0) return 0.0;
                return v * (sigma == 0.0 ? 1.0 : std::exp(sigma * (u - t)));
              },
              a, b, tol);
        }
      },
      f.node());
}

IntegralResult integrate(const Signal &f, double a, double b, double tol) {
  return kernel_integral(f, 0.0, 0.0, a, b, tol);
}

IntegralResult integrate_weighted(const Signal &f, double sigma, double t, double s,
                                  double tol) {
  if (!(t <= s)) throw std::invalid_argument("integrate_weighted: need t <= s");
  auto drive = Signal::sum({f.shared_from_this(), Signal::constant(-sigma)});
  return kernel_integral(*drive, sigma, t, t, s, tol);
}

}  // namespace apfire
