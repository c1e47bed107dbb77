#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apfire {

namespace {

bool is_finite(double x) { return std::isfinite(x); }

long long checked_floor(double x) {
  if (std::abs(x) > DyadicOps::kMaxAbsTime)
    throw std::invalid_argument("signal: time outside supported range");
  return static_cast<long long>(std::floor(x));
}

}  // namespace

SignalPtr Signal::constant(double c) {
  if (!is_finite(c)) throw std::invalid_argument("constant: non-finite value");
  return SignalPtr(new Signal(ConstNode{c}));
}

SignalPtr Signal::trig(std::vector<TrigTerm> terms) {
  for (const auto &t : terms)
    if (!is_finite(t.sin_coeff) || !is_finite(t.cos_coeff) || !is_finite(t.freq))
      throw std::invalid_argument("trig: non-finite term");
  return SignalPtr(new Signal(TrigPolyNode{std::move(terms)}));
}

SignalPtr Signal::piecewise_periodic(double period,
                                     std::vector<std::pair<double, double>> pieces) {
  if (!(period > 0) || !is_finite(period))
    throw std::invalid_argument("piecewise_periodic: period must be positive");
  if (pieces.empty())
    throw std::invalid_argument("piecewise_periodic: need at least one piece");
  PiecewisePeriodicNode node;
  node.period = period;
  double prev = -1.0;
  for (const auto &[brk, val] : pieces) {
    if (!is_finite(brk) || !is_finite(val))
      throw std::invalid_argument("piecewise_periodic: non-finite piece");
    if (brk < 0 || brk >= period || brk <= prev)
      throw std::invalid_argument(
          "piecewise_periodic: breakpoints must increase strictly inside [0, period)");
    node.breaks.push_back(brk);
    node.values.push_back(val);
    prev = brk;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < node.breaks.size(); ++i) {
    double hi = (i + 1 < node.breaks.size()) ? node.breaks[i + 1] : period;
    total += node.values[i] * (hi - node.breaks[i]);
  }
  total += node.values.back() * node.breaks.front();  // wrap segment [0, breaks[0])
  node.period_integral = total;
  return SignalPtr(new Signal(std::move(node)));
}

SignalPtr Signal::dyadic(DyadicKind kind, int max_terms) {
  if (max_terms < 0) throw std::invalid_argument("dyadic: negative term cutoff");
  return SignalPtr(new Signal(DyadicNode{kind, max_terms}));
}

SignalPtr Signal::exponential(double coeff, double rate) {
  if (!is_finite(coeff) || !is_finite(rate))
    throw std::invalid_argument("exponential: non-finite parameter");
  return SignalPtr(new Signal(ExpNode{coeff, rate}));
}

SignalPtr Signal::sum(std::vector<SignalPtr> children) {
  for (const auto &c : children)
    if (!c) throw std::invalid_argument("sum: null child");
  return SignalPtr(new Signal(SumNode{std::move(children)}));
}

SignalPtr Signal::scale(double factor, SignalPtr child) {
  if (!child) throw std::invalid_argument("scale: null child");
  if (!is_finite(factor)) throw std::invalid_argument("scale: non-finite factor");
  return SignalPtr(new Signal(ScaleNode{factor, std::move(child)}));
}

SignalPtr Signal::shift(double tau, SignalPtr child) {
  if (!child) throw std::invalid_argument("shift: null child");
  if (!is_finite(tau)) throw std::invalid_argument("shift: non-finite tau");
  return SignalPtr(new Signal(ShiftNode{tau, std::move(child)}));
}

SignalPtr Signal::clamp(double limit, SignalPtr child) {
  if (!child) throw std::invalid_argument("clamp: null child");
  if (!(limit > 0)) throw std::invalid_argument("clamp: limit must be positive");
  return SignalPtr(new Signal(ClampNode{limit, std::move(child)}));
}

// ---- evaluation -------------------------------------------------------

namespace {

double eval_piecewise(const PiecewisePeriodicNode &n, double t) {
  double u = t - n.period * std::floor(t / n.period);
  if (u >= n.period || u < 0) u = 0.0;  // rounding at the seam
  auto it = std::upper_bound(n.breaks.begin(), n.breaks.end(), u);
  if (it == n.breaks.begin()) return n.values.back();  // wrap below first breakpoint
  return n.values[static_cast<std::size_t>(it - n.breaks.begin()) - 1];
}

}  // namespace

double Signal::eval(double t) const {
  if (!is_finite(t)) throw std::invalid_argument("eval: non-finite time");
  return std::visit(
      [&](const auto &n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, TrigPolyNode>) {
          double v = 0.0;
          for (const auto &term : n.terms)
            v += term.sin_coeff * std::sin(term.freq * t) +
                 term.cos_coeff * std::cos(term.freq * t);
          return v;
        } else if constexpr (std::is_same_v<T, PiecewisePeriodicNode>) {
          return eval_piecewise(n, t);
        } else if constexpr (std::is_same_v<T, DyadicNode>) {
          DyadicOps ops = dyadic_ops(n);
          long long z = checked_floor(t);
          return ops.baseline() + ops.spike_value(z, t - static_cast<double>(z));
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          return n.coeff * std::exp(n.rate * t);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          double v = 0.0;
          for (const auto &c : n.children) v += c->eval(t);
          return v;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          return n.factor * n.child->eval(t);
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return n.child->eval(t + n.tau);
        } else {  // ClampNode
          return std::clamp(n.child->eval(t), -n.limit, n.limit);
        }
      },
      node_);
}

// ---- dyadic lattice machinery -----------------------------------------

namespace {

double pow2d(int e) { return std::ldexp(1.0, e); }

struct Lattice {
  double stride;
  double offset;
};

// Cell offset of the alternating construction: s_1 = 0, s_{n+1} = -2 s_n - 1.
long long alt_offset(int n) {
  long long s = 0;
  for (int i = 1; i < n; ++i) s = -2 * s - 1;
  return s;
}

// Lattice of cells z carrying term n. Terms whose lattice lies beyond the
// representable range come back with an infinite stride and are skipped.
Lattice term_lattice(DyadicKind kind, int n) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case DyadicKind::MuNoMu:
      return {pow2d(n), pow2d(n - 1)};
    case DyadicKind::MeanlessSeries: {
      if (n > 9) return {inf, inf};
      double twoexp = pow2d(1 << n);     // 2^{2^n}
      double stride = twoexp * twoexp;   // 4^{2^n}
      if (!std::isfinite(stride)) return {inf, inf};
      return {stride, twoexp};
    }
    case DyadicKind::UnboundedMeanSeries: {
      if (n > 32) return {inf, inf};
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= 3.0;
      return {2.0 * p, -p};
    }
    case DyadicKind::AlternatingOffsets:
      return {pow2d(n), static_cast<double>(alt_offset(n))};
  }
  return {inf, inf};
}

double meanless_height(int n) {
  // a_n = (n+1)^2 2^{2^n}; only reachable for n <= 9.
  return static_cast<double>(n + 1) * (n + 1) * pow2d(1 << std::min(n, 9));
}

}  // namespace

DyadicOps dyadic_ops(const DyadicNode &node) { return DyadicOps{node.kind, node.max_terms}; }

double DyadicOps::baseline() const {
  switch (kind) {
    case DyadicKind::MuNoMu: return 1.0;
    case DyadicKind::AlternatingOffsets: return 2.0;
    default: return 0.0;
  }
}

bool DyadicOps::lattice_range(int n, double a, double b, long long &m_lo,
                              long long &m_hi) const {
  if (n < 1 || n > max_terms || n > kMaxIndex) return false;
  if (std::max(std::abs(a), std::abs(b)) > kMaxAbsTime)
    throw std::invalid_argument("signal: window outside supported range");
  Lattice lat = term_lattice(kind, n);
  if (!std::isfinite(lat.stride) || !std::isfinite(lat.offset) || !(lat.stride > 0))
    return false;
  double lo = (a - 1.0 - lat.offset) / lat.stride;
  double hi = (b - lat.offset) / lat.stride;
  if (!(lo <= hi + 1)) return false;
  if (lo < -4.0e18 || hi > 4.0e18) return false;
  m_lo = static_cast<long long>(std::ceil(lo));
  m_hi = static_cast<long long>(std::floor(hi));
  // Division rounding can misplace the bounds by one index either way;
  // widen, then trim against the exact element positions.
  --m_lo;
  ++m_hi;
  while (m_lo <= m_hi && lattice_element(n, m_lo) < a - 1.0) ++m_lo;
  while (m_lo <= m_hi && lattice_element(n, m_hi) > b) --m_hi;
  return m_lo <= m_hi;
}

double DyadicOps::lattice_element(int n, long long m) const {
  Lattice lat = term_lattice(kind, n);
  return lat.stride * static_cast<double>(m) + lat.offset;
}

int DyadicOps::active_terms(double a, double b) const {
  int last = 0;
  for (int n = 1; n <= std::min(max_terms, kMaxIndex); ++n) {
    long long lo, hi;
    if (lattice_range(n, a, b, lo, hi)) last = n;
  }
  return last;
}

void DyadicOps::append_segments(int n, double x_lo, double x_hi,
                                std::vector<LocalSegment> &out) const {
  switch (kind) {
    case DyadicKind::MuNoMu: {
      // 2^{n-1} plateaus of width 2^{1-2n} at spacing 2^{1-n}, height 2^n.
      double spacing = pow2d(1 - n);
      double width = pow2d(1 - 2 * n);
      double height = pow2d(n);
      long long count = 1LL << (n - 1);
      long long k_first =
          std::max(0LL, static_cast<long long>(std::floor(x_lo / spacing)));
      long long k_last =
          std::min(count - 1, static_cast<long long>(std::floor(x_hi / spacing)));
      for (long long k = k_first; k <= k_last; ++k) {
        double s = static_cast<double>(k) * spacing;
        if (s + width <= x_lo || s >= x_hi) continue;
        out.push_back({s, s + width, height, 0.0});
      }
      break;
    }
    case DyadicKind::MeanlessSeries: {
      double half = 1.0 / (n + 1);
      double a_n = meanless_height(n);
      if (0.5 - half < x_hi && 0.5 > x_lo)
        out.push_back({0.5 - half, 0.5, 0.0, a_n});
      if (0.5 < x_hi && 0.5 + half > x_lo)
        out.push_back({0.5, 0.5 + half, a_n * half, -a_n});
      break;
    }
    case DyadicKind::UnboundedMeanSeries: {
      double w = 1.0 / n;
      if (0.0 < x_hi && w > x_lo)
        out.push_back({0.0, w, static_cast<double>(n) * n, 0.0});
      break;
    }
    case DyadicKind::AlternatingOffsets: {
      double lo = 1.0 - 1.0 / (n + 1);
      if (lo < x_hi && 1.0 > x_lo)
        out.push_back({lo, 1.0, static_cast<double>(n + 1) * (n + 1), 0.0});
      break;
    }
  }
}

double DyadicOps::integral_local(int n, double x0, double x1) const {
  x0 = std::max(x0, 0.0);
  x1 = std::min(x1, 1.0);
  if (x1 <= x0) return 0.0;
  if (kind == DyadicKind::MuNoMu) {
    // Exact overlap measure with the plateau union in O(1).
    double spacing = pow2d(1 - n);
    double width = pow2d(1 - 2 * n);
    long long count = 1LL << (n - 1);
    auto covered_before = [&](double x) -> double {
      if (x <= 0) return 0.0;
      long long k = static_cast<long long>(std::floor(x / spacing));
      if (k >= count) return static_cast<double>(count) * width;
      double within = std::min(std::max(x - static_cast<double>(k) * spacing, 0.0), width);
      return static_cast<double>(k) * width + within;
    };
    return pow2d(n) * (covered_before(x1) - covered_before(x0));
  }
  std::vector<LocalSegment> segs;
  append_segments(n, x0, x1, segs);
  double total = 0.0;
  for (const auto &s : segs) {
    double lo = std::max(s.x0, x0), hi = std::min(s.x1, x1);
    if (hi <= lo) continue;
    double v_lo = s.value0 + s.slope * (lo - s.x0);
    double v_hi = s.value0 + s.slope * (hi - s.x0);
    total += 0.5 * (v_lo + v_hi) * (hi - lo);
  }
  return total;
}

namespace {

// z on the term-n lattice, exact integer arithmetic.
bool cell_member(DyadicKind kind, int n, long long z) {
  switch (kind) {
    case DyadicKind::MuNoMu: {
      if (n > 62) return false;
      long long stride = 1LL << n, off = 1LL << (n - 1);
      return ((z - off) % stride) == 0;
    }
    case DyadicKind::MeanlessSeries: {
      if (n >= 1 && n <= 4) {
        int v = 1 << n;                     // 2^n <= 16
        long long off = 1LL << v;           // 2^{2^n}
        long long stride = 1LL << (2 * v);  // 4^{2^n} <= 2^32
        return ((z - off) % stride) == 0;
      }
      // n == 5: the stride 2^64 exceeds int64; the only reachable cell is
      // the offset itself. n >= 6 lies beyond the supported time range.
      if (n == 5) return z == (1LL << 32);
      return false;
    }
    case DyadicKind::UnboundedMeanSeries: {
      long long p = 1;
      for (int i = 0; i < n; ++i) {
        if (p > (4LL << 60) / 3) return false;
        p *= 3;
      }
      long long stride = 2 * p;
      return (((z + p) % stride) + stride) % stride == 0;
    }
    case DyadicKind::AlternatingOffsets: {
      if (n > 60) return false;
      long long stride = 1LL << n;
      long long r = ((z - alt_offset(n)) % stride + stride) % stride;
      return r == 0;
    }
  }
  return false;
}

}  // namespace

void DyadicOps::terms_at_cell(long long z, std::vector<int> &out) const {
  out.clear();
  int cap = std::min(max_terms, kMaxIndex);
  switch (kind) {
    case DyadicKind::MuNoMu: {
      if (z == 0) return;
      unsigned long long u = static_cast<unsigned long long>(z < 0 ? -z : z);
      int v2 = 0;
      while ((u & 1ULL) == 0) { u >>= 1; ++v2; }
      int n = v2 + 1;
      if (n <= cap) out.push_back(n);
      break;
    }
    case DyadicKind::MeanlessSeries: {
      if (z == 0) return;
      for (int n = 1; n <= std::min(cap, 5); ++n)
        if (cell_member(kind, n, z)) { out.push_back(n); return; }
      break;
    }
    case DyadicKind::UnboundedMeanSeries: {
      if (z == 0) return;
      long long u = z < 0 ? -z : z;
      int v3 = 0;
      while (u % 3 == 0) { u /= 3; ++v3; }
      if (u % 2 == 0) return;  // 3-free part even: z on no lattice
      for (int n = 1; n <= std::min(v3, cap); ++n) out.push_back(n);
      break;
    }
    case DyadicKind::AlternatingOffsets: {
      long long az = z < 0 ? -z : z;
      for (int n = 1; n <= cap && n <= 60; ++n) {
        if (cell_member(kind, n, z)) { out.push_back(n); return; }
        if (n >= 3 && (1LL << (n - 2)) > az && std::llabs(alt_offset(n)) > az) break;
      }
      break;
    }
  }
}

double DyadicOps::spike_value(long long z, double x) const {
  std::vector<int> terms;
  terms_at_cell(z, terms);
  double v = 0.0;
  for (int n : terms) {
    switch (kind) {
      case DyadicKind::MuNoMu: {
        double spacing = pow2d(1 - n);
        double width = pow2d(1 - 2 * n);
        long long count = 1LL << (n - 1);
        long long k = static_cast<long long>(std::floor(x / spacing));
        if (k >= 0 && k < count) {
          double rel = x - static_cast<double>(k) * spacing;
          if (rel > 0.0 && rel < width) v += pow2d(n);  // plateaus are open intervals
        }
        break;
      }
      case DyadicKind::MeanlessSeries: {
        double half = 1.0 / (n + 1);
        double a_n = meanless_height(n);
        if (x >= 0.5 - half && x < 0.5) v += a_n * (x - (0.5 - half));
        else if (x >= 0.5 && x < 0.5 + half) v += a_n * ((0.5 + half) - x);
        break;
      }
      case DyadicKind::UnboundedMeanSeries:
        if (x >= 0.0 && x < 1.0 / n) v += static_cast<double>(n) * n;
        break;
      case DyadicKind::AlternatingOffsets:
        if (x > 1.0 - 1.0 / (n + 1) && x < 1.0) v += static_cast<double>(n + 1) * (n + 1);
        break;
    }
  }
  return v;
}

// ---- piecewise-affine extraction ---------------------------------------

namespace {

bool dyadic_pieces(const DyadicOps &ops, double a, double b, PieceList &out,
                   std::size_t max_pieces) {
  long long z_lo = checked_floor(a);
  long long z_hi = checked_floor(b);
  if (static_cast<double>(z_hi) == b) --z_hi;
  double base = ops.baseline();
  std::vector<int> terms;
  std::vector<LocalSegment> segs;
  for (long long z = z_lo; z <= z_hi; ++z) {
    double zx = static_cast<double>(z);
    double lo = std::max(a, zx) - zx;
    double hi = std::min(b, zx + 1.0) - zx;
    if (hi <= lo) continue;
    ops.terms_at_cell(z, terms);
    segs.clear();
    for (int n : terms) {
      if (ops.kind == DyadicKind::MuNoMu && n > 1 &&
          (1ULL << (n - 1)) > max_pieces)
        return false;  // would expand into too many plateaus
      ops.append_segments(n, lo, hi, segs);
    }
    if (segs.size() + out.size() > max_pieces) return false;
    std::vector<double> cuts{lo, hi};
    for (const auto &s : segs) {
      if (s.x0 > lo && s.x0 < hi) cuts.push_back(s.x0);
      if (s.x1 > lo && s.x1 < hi) cuts.push_back(s.x1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double p0 = cuts[i], p1 = cuts[i + 1];
      double mid = 0.5 * (p0 + p1);
      double value = base, slope = 0.0;
      for (const auto &s : segs) {
        if (mid >= s.x0 && mid < s.x1) {
          value += s.value0 + s.slope * (p0 - s.x0);
          slope += s.slope;
        }
      }
      out.push_back({zx + p0, zx + p1, value, slope});
      if (out.size() > max_pieces) return false;
    }
  }
  return !out.empty();
}

bool periodic_pieces(const PiecewisePeriodicNode &n, double a, double b, PieceList &out,
                     std::size_t max_pieces) {
  double t = a;
  while (t < b) {
    if (out.size() >= max_pieces) return false;
    double k = std::floor(t / n.period);
    double u = t - n.period * k;
    if (u >= n.period) {  // rounding at the seam: start of the next period
      k += 1.0;
      u = 0.0;
    }
    if (u < 0) u = 0.0;
    auto it = std::upper_bound(n.breaks.begin(), n.breaks.end(), u);
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
    if (!(next > t)) next = std::nextafter(t, std::numeric_limits<double>::infinity());
    double hi = std::min(next, b);
    out.push_back({t, hi, value, 0.0});
    t = hi;
  }
  return true;
}

PieceList merge_sum(const PieceList &lhs, const PieceList &rhs) {
  PieceList out;
  std::size_t i = 0, j = 0;
  double x = std::max(lhs.front().x0, rhs.front().x0);
  while (i < lhs.size() && j < rhs.size()) {
    double hi = std::min(lhs[i].x1, rhs[j].x1);
    if (hi > x) {
      out.push_back({x, hi, lhs[i].value_at(x) + rhs[j].value_at(x),
                     lhs[i].slope + rhs[j].slope});
      x = hi;
    }
    if (lhs[i].x1 <= x) ++i;
    if (j < rhs.size() && rhs[j].x1 <= x) ++j;
  }
  return out;
}

void clamp_pieces(PieceList &pieces, double limit) {
  PieceList out;
  for (const auto &p : pieces) {
    if (p.slope == 0.0) {
      out.push_back({p.x0, p.x1, std::clamp(p.value0, -limit, limit), 0.0});
      continue;
    }
    std::vector<double> cuts{p.x0, p.x1};
    for (double level : {limit, -limit}) {
      double x = p.x0 + (level - p.value0) / p.slope;
      if (x > p.x0 && x < p.x1) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double lo = cuts[i], hi = cuts[i + 1];
      double vm = p.value_at(0.5 * (lo + hi));
      if (vm > limit)
        out.push_back({lo, hi, limit, 0.0});
      else if (vm < -limit)
        out.push_back({lo, hi, -limit, 0.0});
      else
        out.push_back({lo, hi, p.value_at(lo), p.slope});
    }
  }
  pieces = std::move(out);
}

}  // namespace

std::optional<PieceList> extract_pieces(const Signal &sig, double a, double b,
                                        std::size_t max_pieces) {
  if (!(a < b)) throw std::invalid_argument("extract_pieces: need a < b");
  return std::visit(
      [&](const auto &n) -> std::optional<PieceList> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return PieceList{{a, b, n.value, 0.0}};
        } else if constexpr (std::is_same_v<T, TrigPolyNode>) {
          double c = 0.0;
          for (const auto &t : n.terms) {
            if (t.freq != 0.0 && (t.sin_coeff != 0.0 || t.cos_coeff != 0.0))
              return std::nullopt;
            if (t.freq == 0.0) c += t.cos_coeff;  // sin(0 t) vanishes
          }
          return PieceList{{a, b, c, 0.0}};
        } else if constexpr (std::is_same_v<T, PiecewisePeriodicNode>) {
          PieceList out;
          if (!periodic_pieces(n, a, b, out, max_pieces)) return std::nullopt;
          return out;
        } else if constexpr (std::is_same_v<T, DyadicNode>) {
          PieceList out;
          if (!dyadic_pieces(dyadic_ops(n), a, b, out, max_pieces)) return std::nullopt;
          return out;
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          if (n.coeff == 0.0) return PieceList{{a, b, 0.0, 0.0}};
          if (n.rate == 0.0) return PieceList{{a, b, n.coeff, 0.0}};
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          if (n.children.empty()) return PieceList{{a, b, 0.0, 0.0}};
          std::optional<PieceList> acc;
          for (const auto &c : n.children) {
            auto pc = extract_pieces(*c, a, b, max_pieces);
            if (!pc) return std::nullopt;
            acc = acc ? merge_sum(*acc, *pc) : std::move(pc);
            if (acc->size() > max_pieces) return std::nullopt;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, ScaleNode>) {
          auto pc = extract_pieces(*n.child, a, b, max_pieces);
          if (!pc) return std::nullopt;
          for (auto &p : *pc) { p.value0 *= n.factor; p.slope *= n.factor; }
          return pc;
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          auto pc = extract_pieces(*n.child, a + n.tau, b + n.tau, max_pieces);
          if (!pc) return std::nullopt;
          for (auto &p : *pc) { p.x0 -= n.tau; p.x1 -= n.tau; }
          return pc;
        } else {  // ClampNode
          auto pc = extract_pieces(*n.child, a, b, max_pieces);
          if (!pc) return std::nullopt;
          clamp_pieces(*pc, n.limit);
          return pc;
        }
      },
      sig.node());
}

}  // namespace apfire
