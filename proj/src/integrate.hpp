// Definite integration of signal expressions: closed forms for every exact
// node kind (constants, trig polynomials, periodic step functions, the
// series constructions and their sums/shifts/scales), adaptive Simpson
// quadrature for the rest.  The same machinery evaluates the plain integral
// and the exponentially weighted charge integral used by the firing solver.
#pragma once

#include <functional>

#include "signal.hpp"

namespace apfire {

struct IntegralResult {
  double value;
  double err_bound;  // 0 for closed-form paths, quadrature estimate otherwise
};

/// int_a^b f(u) du, exact where the expression allows, else adaptive with
/// absolute error bounded by tol. Requires a <= b.
IntegralResult integrate(const Signal &f, double a, double b, double tol);

/// Charge integral int_t^s (f(u) - sigma) e^{sigma (u-t)} du in shifted
/// exponential coordinates. Requires t <= s and sigma >= 0.
IntegralResult integrate_weighted(const Signal &f, double sigma, double t, double s,
                                  double tol);

/// Kernel-weighted integral int_a^b f(u) e^{sigma (u-t)} du for t <= a <= b.
/// sigma == 0 reduces to the plain integral. Building block for the above;
/// exposed for the firing solver, which pre-subtracts sigma structurally.
IntegralResult kernel_integral(const Signal &f, double sigma, double t, double a,
                               double b, double tol);

/// int_a^b e^{sigma (u-t)} du.
double kernel_mass(double sigma, double t, double a, double b);

/// Adaptive Simpson quadrature with interval halving, absolute budget tol,
/// depth cap 60. Throws QuadratureError when the budget is exhausted or the
/// integrand returns non-finite values.
IntegralResult adaptive_simpson(const std::function<double(double)> &fn, double a,
                                double b, double tol);

}  // namespace apfire
