/** First variation of the energy: finite-difference convergence to the
 * analytic formula, criticality at quasi-Einstein points under the
 * constraint, diffeomorphism invariance at mu = 0, and the pointwise
 * delta-scalar formula.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "qesmms/families.hpp"
#include "qesmms/variation.hpp"

#include "oracle_helpers.hpp"

using namespace qesmms;
using qesmms_test::make_catalog_smms;
using qesmms_test::observed_order;

namespace {

// Bump windows relative to the domain, strictly interior so boundary terms
// vanish.
Profile window(const RadialSmms& s, double lo, double hi, double amp) {
  const double L = s.r1 - s.r0;
  return Profile::bump(amp, s.r0 + lo * L, s.r0 + hi * L);
}

VariationDatum generic_variation(const RadialSmms& s) {
  VariationDatum var;
  var.h_rr = window(s, 0.15, 0.60, 1.1);
  if (s.n >= 2) var.h_tan = window(s, 0.25, 0.75, -0.7);
  var.density_var = window(s, 0.20, 0.70, 0.9);
  return var;
}

// Scales the density direction so the linear constraint functional
// int (delta phi - tr h / 2) dmeasure vanishes.
VariationDatum constrained_variation(const RadialSmms& s) {
  VariationDatum var = generic_variation(s);
  VariationDatum h_only = var;
  h_only.density_var = Profile();
  VariationDatum d_only;
  d_only.density_var = var.density_var;
  const double ih = variation_constraint(s, h_only).value;
  const double id = variation_constraint(s, d_only).value;
  REQUIRE(std::fabs(id) > 1e-8);
  var.density_var = (-ih / id) * var.density_var;
  CHECK(std::fabs(variation_constraint(s, var).value) < 1e-10);
  return var;
}

}  // namespace

TEST_CASE("finite differences converge at second order to the analytic value") {
  std::mt19937 rng(51);
  struct Case {
    int n;
    DimParam m;
  };
  for (const Case& c : {Case{3, DimParam(2.5)}, Case{1, DimParam(4.0)},
                        Case{2, DimParam::pos_inf()}}) {
    const RadialSmms s = make_catalog_smms(c.n, c.m, rng);
    const VariationDatum var = generic_variation(s);
    const double mu = 0.4;
    const double analytic = first_variation_analytic(s, mu, var);
    const double e1 = std::fabs(first_variation_fd(s, mu, var, 2e-3) - analytic);
    const double e2 = std::fabs(first_variation_fd(s, mu, var, 1e-3) - analytic);
    const double e3 = std::fabs(first_variation_fd(s, mu, var, 5e-4) - analytic);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(observed_order(e1, e2) > 1.9);
    CHECK(observed_order(e1, e2) < 2.2);
  }
}

TEST_CASE("quasi-Einstein spaces are constrained-critical") {
  struct Model {
    RadialSmms s;
    double mu;
  };
  std::vector<Model> models;
  {
    const EllipticGaussian peg = elliptic_gaussian(2, DimParam(3.0), 1);
    models.push_back({peg.smms, peg.mu});
    const EllipticGaussian neg = elliptic_gaussian(2, DimParam(4.0), -1);
    models.push_back({neg.smms, neg.mu});
  }
  for (const Model& mod : models) {
    const VariationDatum var = constrained_variation(mod.s);
    const double dv = first_variation_analytic(mod.s, mod.mu, var);
    CHECK(std::fabs(dv) < 1e-8 * variation_norm(mod.s, var));
    // The finite-difference route agrees that the point is critical.  The
    // symmetric difference leaves an O(step^2) truncation term, so the step
    // is chosen small enough for that term to clear the bound.
    CHECK(std::fabs(first_variation_fd(mod.s, mod.mu, var, 5e-4)) <
          1e-5 * variation_norm(mod.s, var));
  }
}

TEST_CASE("steady models are critical without the constraint") {
  // lambda = 0 kills the constraint coefficient, so every compactly
  // supported variation is already critical.
  const CigarSolution cig = cigar_solve(DimParam(3.0), 9.0, 1e-10);
  const VariationDatum var = generic_variation(cig.smms);
  const double dv = first_variation_analytic(cig.smms, cig.mu, var);
  CHECK(std::fabs(dv) < 1e-7 * variation_norm(cig.smms, var));
}

TEST_CASE("diffeomorphism flow is a null direction of the mu = 0 energy") {
  std::mt19937 rng(52);
  for (int n : {1, 3}) {
    for (const DimParam& m : {DimParam(3.0), DimParam::pos_inf()}) {
      const RadialSmms s = make_catalog_smms(n, m, rng);
      const VariationDatum var = diffeo_variation(s, window(s, 0.2, 0.8, 0.6));
      const double dv = first_variation_analytic(s, 0.0, var);
      CHECK(std::fabs(dv) < 1e-8 * (1.0 + variation_norm(s, var)));
      CHECK(std::fabs(first_variation_fd(s, 0.0, var, 1e-3)) <
            1e-5 * (1.0 + variation_norm(s, var)));
    }
  }
}

TEST_CASE("the density direction is inert at m = 0") {
  std::mt19937 rng(53);
  const RadialSmms s = make_catalog_smms(2, DimParam(0.0), rng);
  VariationDatum var = generic_variation(s);
  const double with_density = first_variation_analytic(s, 0.9, var);
  var.density_var = Profile();
  const double without = first_variation_analytic(s, 0.9, var);
  CHECK(with_density == doctest::Approx(without).epsilon(1e-14));
  CHECK(std::fabs(first_variation_fd(s, 0.9, var, 1e-3) - with_density) < 1e-5);
}

TEST_CASE("pointwise delta-scalar formula converges at second order") {
  std::mt19937 rng(54);
  for (const DimParam& m : {DimParam(2.5), DimParam::pos_inf()}) {
    const RadialSmms s = make_catalog_smms(3, m, rng);
    const VariationDatum var = generic_variation(s);
    const double r = 0.5 * (s.r0 + s.r1);
    const double d1 = delta_scalar_check(s, var, r, 2e-3);
    const double d2 = delta_scalar_check(s, var, r, 1e-3);
    CHECK(d1 < 1e-3);
    CHECK(d2 < d1 / 3.0);
  }
}
