/** Conformal changes of radial smooth metric measure spaces.
 *
 * A conformal datum rescales (g, v^m dvol) to (u^{-2} g, u^{-m-n} v^m dvol);
 * the log-density shift f satisfies u^{m+n-2} = e^f at finite m.  At
 * m = +/-inf the metric is unchanged and the datum degenerates to the
 * measure shift phi -> phi + f alone.
 *
 * The weighted curvature of the rescaled space can be evaluated two ways:
 * directly through the transformation formulas (transformed_curvature, no
 * resampling error), or by materializing the rescaled space in its own
 * arclength coordinate (conformal_transform) and running the standard
 * operators there.  The test suite holds both paths together.
 *
 * The first-order system coupling two scale functions u, v with constants
 * (lambda, mu) is evaluated by scale_system_residuals; duality_map swaps
 * (u, v, lambda, mu, m) -> (v, u, mu, lambda, 2-m-n) and leaves those
 * residuals invariant.  The mu-residual is implemented as the
 * lambda-residual of the swapped data, which makes the invariance exact in
 * floating point rather than merely analytic.
 */
#pragma once

#include <array>
#include <vector>

#include "qesmms/smms.hpp"

namespace qesmms {

struct ConformalDatum {
  RadialSmms base;
  Profile u;  // conformal factor, positive; empty at |m| = inf
  Profile f;  // log-density shift

  // Finite m: derives f = (m+n-2) log u.
  static ConformalDatum from_factor(RadialSmms base, Profile u);
  // |m| = inf: metric fixed, measure shifted by e^{-f}.
  static ConformalDatum from_measure_shift(RadialSmms base, Profile f);
};

// g-frame components of the transformed Bakry-Emery Ricci tensor and the
// transformed weighted scalar field.  The rescaled space's own orthonormal
// components are u^2 times these.
struct TransformedCurvature {
  double ric_rr = 0.0, ric_tan = 0.0, scalar = 0.0;
};
TransformedCurvature transformed_curvature(const ConformalDatum& c, double r);

struct ConformalTransformResult {
  RadialSmms smms;
  std::vector<double> r_nodes;     // sample points in the base coordinate
  std::vector<double> rhat_nodes;  // their arclength images
};
ConformalTransformResult conformal_transform_detailed(const ConformalDatum& c,
                                                      int samples = 4097,
                                                      int order = 5);
RadialSmms conformal_transform(const ConformalDatum& c, int samples = 4097,
                               int order = 5);

struct ScaleTuple {
  int n = 2;
  Profile u, v;
  double lambda = 0.0, mu = 0.0;
  DimParam m;
};
ScaleTuple duality_map(const ScaleTuple& t);

nlohmann::json scale_tuple_to_json(const ScaleTuple& t);
ScaleTuple scale_tuple_from_json(const nlohmann::json& j);

// Pointwise residuals of the coupled scale system at r:
//   [0] tracefree second-order residual (rr minus tangential component),
//   [1] the lambda trace residual, [2] the mu trace residual.
// All three vanish identically iff (u^{-2} g, (v/u)^m) is quasi-Einstein
// with constants (lambda, mu) and simultaneously (v^{-2} g, (u/v)^{2-m-n})
// with (mu, lambda).
std::array<double, 3> scale_system_residuals(const RadialSmms& base, const Profile& u,
                                             double lambda, double mu, double r);

struct FourEquivalencesReport {
  std::array<double, 4> residuals{};  // normalized sup-residual per route
  double band_ratio = 0.0;
  bool band_ok = false;
  bool all_small(double tol) const {
    for (double x : residuals)
      if (!(x <= tol)) return false;
    return true;
  }
};

// The four characterizations of one conformally coupled pair: (1) the scale
// system for (u, v, lambda, mu, m); (2) quasi-Einstein verification of
// (u^{-2} g, (v/u)^m); (3) the scale system for the dual tuple; (4)
// quasi-Einstein verification of (v^{-2} g, (u/v)^{2-m-n}).  Residuals are
// normalized to a common pointwise scale so agreement is meaningful.
FourEquivalencesReport four_equivalences_check(const RadialSmms& base, const Profile& u,
                                               double lambda, double mu,
                                               int grid_points = 129);

}  // namespace qesmms
