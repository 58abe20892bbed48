/** Radial profile functions with exact derivative propagation.
 *
 * A Profile is an immutable expression tree over a small catalog of
 * closed/form primitives (constants, polynomials, trigonometric and
 * hyperbolic waves, sech^2, exponentials of quadratics, smooth bumps)
 * closed under sum, product, real power, log, exp and d/dr.  Evaluation
 * returns a third-order jet; every derivative a curvature formula needs is
 * propagated through the tree by exact chain rules.
 *
 * Tabulated data enters through sampled profiles: local polynomial
 * interpolation of a chosen order p on the p+1 nearest nodes (the grid may
 * be non-uniform), with interpolation error O(h^p).  Third derivatives of
 * sampled profiles use one centered finite difference of the interpolated
 * second derivative.  Custom nodes (used by the solved families) evaluate a
 * callback and serialize as sampled profiles.
 */
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qesmms/jets.hpp"

#include <json.hpp>

namespace qesmms {

class ProfileNode {
 public:
  virtual ~ProfileNode() = default;
  virtual Jet3 jet(double r) const = 0;
  virtual nlohmann::json spec() const = 0;
};

class Profile {
 public:
  Profile() = default;  // empty; evaluating throws

  Jet3 jet(double r) const;
  double operator()(double r) const { return jet(r).f; }
  double d1(double r) const { return jet(r).d1; }
  double d2(double r) const { return jet(r).d2; }
  double d3(double r) const { return jet(r).d3; }
  bool empty() const { return !node_; }

  nlohmann::json spec() const;
  static Profile from_spec(const nlohmann::json& j);

  // Catalog primitives.
  static Profile constant(double c);
  static Profile polynomial(std::vector<double> coeffs);  // c0 + c1 r + ...
  static Profile sin(double amp, double freq, double phase = 0.0);
  static Profile cos(double amp, double freq, double phase = 0.0);
  static Profile sinh(double amp, double freq, double phase = 0.0);
  static Profile cosh(double amp, double freq, double phase = 0.0);
  static Profile sech2(double amp, double freq, double phase = 0.0);
  static Profile exp_quadratic(double amp, double c2, double c1, double c0);
  // amp * ((r-a)(b-r) / ((b-a)/2)^2)^k on (a,b), zero outside; k >= 4 keeps
  // three continuous derivatives at the cut.
  static Profile bump(double amp, double a, double b, int k = 4);

  // Combinators.
  static Profile sum(std::vector<Profile> terms);
  static Profile product(std::vector<Profile> factors);
  static Profile power(Profile base, double exponent);
  static Profile log(Profile base);
  static Profile exp(Profile base);
  static Profile derivative(Profile base);  // d/dr

  // Tabulated data; grid strictly increasing, order >= 1 (>= 3 recommended
  // wherever curvature will be evaluated).
  static Profile sampled(std::vector<double> grid, std::vector<double> values,
                         int order);

  // Callback-backed node; serializes by sampling [r0, r1] at n points.
  static Profile custom(std::function<Jet3(double)> fn, double r0, double r1,
                        int n_export = 2049, int export_order = 5);

  explicit Profile(std::shared_ptr<const ProfileNode> n) : node_(std::move(n)) {}
  const std::shared_ptr<const ProfileNode>& node() const { return node_; }

 private:
  std::shared_ptr<const ProfileNode> node_;
};

inline Profile operator+(const Profile& a, const Profile& b) {
  return Profile::sum({a, b});
}
inline Profile operator*(const Profile& a, const Profile& b) {
  return Profile::product({a, b});
}
inline Profile operator*(double c, const Profile& a) {
  return Profile::product({Profile::constant(c), a});
}

}  // namespace qesmms
