// Haar system over shifted unit intervals: the same dyadic basis is reused
// on every cell [k, k+1), with coefficients computed per cell. Projections
// are finite sums, so approximation error can be tracked cellwise in the
// sliding S^p norms.
#pragma once

#include <vector>

#include "signal.hpp"

namespace apfire {

// j = 1 is the cell indicator; j = 2^m + r (m >= 0, r in 1..2^m) is the
// scaled wavelet 2^{m/2} h(2^m (t-k) - r + 1) supported on
// [k + (r-1)/2^m, k + r/2^m).
struct HaarIndex {
  long long k;
  int j;
};

/// Exact value of h_{k,j} at t (one of 0, +-2^{m/2}, or the indicator 0/1).
double haar_value(const HaarIndex &idx, double t);

class OutOfWindowError : public std::runtime_error {
public:
  explicit OutOfWindowError(const std::string &what) : std::runtime_error(what) {}
};

class HaarCoefficients {
public:
  HaarCoefficients(long long k0, long long k1, int n, std::vector<double> table)
      : k0_(k0), k1_(k1), n_(n), table_(std::move(table)) {}

  long long first_cell() const { return k0_; }
  long long last_cell() const { return k1_; }
  int levels() const { return n_; }

  double at(long long k, int j) const;

  /// Partial expansion sum_{j<=n} a_{k,j} h_{k,j}(t) for the cell containing
  /// t; throws OutOfWindowError outside the coefficient window.
  double project(double t) const;

private:
  long long k0_, k1_;
  int n_;
  std::vector<double> table_;  // row per cell, n entries each
};

/// Coefficient table a_{k,j} = int f h_{k,j} for cells k0..k1, j = 1..n.
/// Integrals route through the signal integrator, so exact nodes stay exact.
HaarCoefficients haar_coefficients(const Signal &f, long long k0, long long k1, int n,
                                   double quad_tol = 1e-10);

/// max over cells l of (int_l^{l+1} |P_n f - f|^p)^{1/p}.
double projection_error(const Signal &f, int n, double p, long long k0, long long k1,
                        double quad_tol = 1e-10);

struct ModulusBound {
  double lhs;   // projection error
  double rhs;   // 24 * sampled sup_{0<h<=1/n} integer-anchored S^p shift modulus
  bool holds;   // lhs <= rhs + tol; a warning flag (the sup over h is sampled)
};

ModulusBound modulus_bound_check(const Signal &f, int n, double p, long long k0,
                                 long long k1, double quad_tol = 1e-10,
                                 double tol = 1e-9);

}  // namespace apfire
