// Symbolic signal algebra: expression trees over constants, trigonometric
// polynomials, periodic step functions and the four lacunary series
// constructions, with exact pointwise evaluation.  Definite integration
// lives in integrate.hpp.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace apfire {

struct Window {
  double a;
  double b;
  Window(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw std::invalid_argument("Window: need a < b");
  }
  double length() const { return b - a; }
};

// The four series constructions. Each one is a baseline constant plus a sum
// of functions f_n supported on translates of an arithmetic lattice, one
// spike pattern per lattice cell [z, z+1).
enum class DyadicKind {
  MuNoMu,              // baseline 1; 2^{n-1} thin plateaus of height 2^n per cell
  MeanlessSeries,      // triangles of area 2^{2^n} on a doubly-exponential lattice
  UnboundedMeanSeries, // plateaus of height n^2 and width 1/n on +-3^n odd multiples
  AlternatingOffsets   // baseline 2; end-of-cell plateaus of height (n+1)^2
};

class Signal;
using SignalPtr = std::shared_ptr<const Signal>;

struct TrigTerm {
  double sin_coeff = 0.0;
  double cos_coeff = 0.0;
  double freq = 0.0;
};

struct ConstNode { double value; };
struct TrigPolyNode { std::vector<TrigTerm> terms; };

// Right-open constant pieces on [0, period); value on [break[i], break[i+1])
// is value[i], wrapping around the period for t below the first breakpoint.
struct PiecewisePeriodicNode {
  double period;
  std::vector<double> breaks;
  std::vector<double> values;
  double period_integral;
};

struct DyadicNode {
  DyadicKind kind;
  int max_terms;  // partial-sum cutoff; INT_MAX-like sentinel for the full series
};

struct ExpNode { double coeff; double rate; };  // coeff * e^{rate t}; quadrature-backed
struct SumNode { std::vector<SignalPtr> children; };
struct ScaleNode { double factor; SignalPtr child; };
struct ShiftNode { double tau; SignalPtr child; };
struct ClampNode { double limit; SignalPtr child; };

using SignalNode = std::variant<ConstNode, TrigPolyNode, PiecewisePeriodicNode,
                                DyadicNode, ExpNode, SumNode, ScaleNode,
                                ShiftNode, ClampNode>;

// A maximal interval [x0, x1) on which the signal is affine:
// f(x) = value0 + slope * (x - x0).
struct LinearPiece {
  double x0;
  double x1;
  double value0;
  double slope;
  double value_at(double x) const { return value0 + slope * (x - x0); }
};
using PieceList = std::vector<LinearPiece>;

/// Immutable signal expression. All constructors validate their invariants;
/// evaluation is deterministic and safe for concurrent use.
class Signal : public std::enable_shared_from_this<Signal> {
public:
  static SignalPtr constant(double c);
  static SignalPtr trig(std::vector<TrigTerm> terms);
  // pieces: (breakpoint, value) with strictly increasing breakpoints in [0, period).
  static SignalPtr piecewise_periodic(double period,
                                      std::vector<std::pair<double, double>> pieces);
  static SignalPtr dyadic(DyadicKind kind, int max_terms = kAllTerms);
  static SignalPtr exponential(double coeff, double rate);
  static SignalPtr sum(std::vector<SignalPtr> children);
  static SignalPtr scale(double factor, SignalPtr child);
  static SignalPtr shift(double tau, SignalPtr child);
  static SignalPtr clamp(double limit, SignalPtr child);  // truncation f_N

  double eval(double t) const;

  const SignalNode &node() const { return node_; }

  static constexpr int kAllTerms = 1 << 20;

private:
  explicit Signal(SignalNode node) : node_(std::move(node)) {}
  SignalNode node_;
};

// ---- dyadic series internals (shared by eval, integration and piece
// extraction; each construction is driven by integer lattice arithmetic so
// that breakpoints are exact in cell-local coordinates) ----

// One affine segment of a spike pattern, in coordinates local to the cell
// [z, z+1):  f_n contributes value0 + slope*(x - x0) on [x0, x1).
struct LocalSegment {
  double x0, x1, value0, slope;
};

struct DyadicOps {
  DyadicKind kind;
  int max_terms;

  double baseline() const;
  // Largest series index whose (closed-cell) support meets [a,b]; 0 if none.
  int active_terms(double a, double b) const;
  // Index range of lattice elements z of term n with [z, z+1] meeting [a,b];
  // false when the term cannot meet the window (or n exceeds max_terms).
  bool lattice_range(int n, double a, double b, long long &m_lo, long long &m_hi) const;
  double lattice_element(int n, long long m) const;  // z = stride_n * m + offset_n
  // Spike segments of term n inside its cell, local coordinates in [0,1).
  // MuNoMu plateaus are generated on demand (clipped to [x_lo, x_hi]) since a
  // single cell may hold 2^{n-1} of them.
  void append_segments(int n, double x_lo, double x_hi,
                       std::vector<LocalSegment> &out) const;
  // Exact integral of term n's spikes over the local window [x0, x1].
  double integral_local(int n, double x0, double x1) const;
  // Series value added to the baseline at local coordinate x of cell z.
  double spike_value(long long z, double x) const;
  // Terms n whose lattice contains the integer z.
  void terms_at_cell(long long z, std::vector<int> &out) const;

  static constexpr int kMaxIndex = 60;
  // Windows are limited so that lattice arithmetic stays exact in doubles.
  static constexpr double kMaxAbsTime = 9.0e12;
};

DyadicOps dyadic_ops(const DyadicNode &node);

// Piecewise-affine view of the signal on [a, b], when one exists (constants,
// periodic step functions, dyadic series and their sums/shifts/scales/clamps).
// Pieces cover [a, b] contiguously. Returns nullopt for transcendental nodes
// or when the expansion would exceed max_pieces.
std::optional<PieceList> extract_pieces(const Signal &sig, double a, double b,
                                        std::size_t max_pieces = 400000);

class QuadratureError : public std::runtime_error {
public:
  explicit QuadratureError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace apfire
