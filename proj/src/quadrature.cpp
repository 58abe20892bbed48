#include "qesmms/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qesmms {

namespace {

IntegralResult finite_interval(const std::function<double(double)>& f, double a,
                               double b, double rel_tol) {
  IntegralResult out;
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  double error = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  try {
    out.value = rule.integrate(f, a, b, rel_tol, &error, &l1, &levels);
  } catch (const std::exception&) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.integrable = false;
    return out;
  }
  out.error_estimate = error * l1;  // boost reports relative-to-L1 error
  if (!std::isfinite(out.value) || !std::isfinite(l1) ||
      (l1 > 0.0 && error > 1e-4)) {
    out.integrable = false;
  }
  return out;
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         double rel_tol) {
  if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
  const bool inf_a = std::isinf(a), inf_b = std::isinf(b);
  if (!inf_a && !inf_b) return finite_interval(f, a, b, rel_tol);
  if (inf_a && !inf_b) {
    auto g = [&f, b](double t) { return f(b - t); };  // reflect to [0, inf)
    return integrate(g, 0.0, std::numeric_limits<double>::infinity(), rel_tol);
  }
  if (inf_a && inf_b) {
    IntegralResult left = integrate(f, a, 0.0, rel_tol);
    IntegralResult right = integrate(f, 0.0, b, rel_tol);
    return {left.value + right.value, left.error_estimate + right.error_estimate,
            left.integrable && right.integrable};
  }

  // [a, +inf): windows [T_k, T_{k+1}] with T_{k+1} = 2 T_k.  Convergent
  // integrands of interest decay at least geometrically in this scheme;
  // three consecutive non-decaying windows mark divergence.
  IntegralResult out;
  double t0 = a;
  double t1 = a + std::max(1.0, std::fabs(a));
  double prev_mag = std::numeric_limits<double>::infinity();
  int non_decaying = 0;
  for (int k = 0; k < 60; ++k) {
    IntegralResult w = finite_interval(f, t0, t1, rel_tol);
    if (!w.integrable) {
      out.integrable = false;
      return out;
    }
    out.value += w.value;
    out.error_estimate += w.error_estimate;
    const double mag = std::fabs(w.value);
    const double scale = std::max(1.0, std::fabs(out.value));
    if (mag <= rel_tol * scale && k > 0) return out;
    if (mag >= prev_mag * 0.999 && mag > rel_tol * scale) {
      if (++non_decaying >= 3) {
        out.integrable = false;
        return out;
      }
    } else {
      non_decaying = 0;
    }
    prev_mag = std::max(mag, std::numeric_limits<double>::min());
    t0 = t1;
    t1 = 2.0 * t1;
  }
  out.integrable = false;  // never settled
  return out;
}

}  // namespace qesmms
