/** Adaptive quadrature with integrability reporting.
 *
 * Wraps tanh-sinh quadrature (double-exponential; the rule never evaluates
 * the endpoints, so integrable endpoint singularities such as degenerate
 * densities v^m with m > -1 are handled directly).  Unbounded domains are
 * integrated over geometrically growing windows; a tail whose window
 * contributions stop decaying marks the integral divergent instead of
 * returning a number.
 */
#pragma once

#include <functional>

namespace qesmms {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool integrable = true;
};

// a < b; either endpoint may be +/-infinity.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-12);

}  // namespace qesmms
