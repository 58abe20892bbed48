/** Example families: elliptic Gaussians, the cigar, the Bohm-Bryant flow,
 * the multiprofile bundle family, and the product constructions.
 */
#include <doctest.h>

#include <cmath>

#include "qesmms/conformal.hpp"
#include "qesmms/curvature.hpp"
#include "qesmms/families.hpp"

using namespace qesmms;

TEST_CASE("elliptic Gaussian constants across n, m and sign") {
  for (int n : {1, 2, 3, 4}) {
    for (double m : {2.0, 5.0, 10.0}) {
      for (int sign : {1, -1}) {
        const EllipticGaussian eg = elliptic_gaussian(n, DimParam(m), sign);
        const double lam = double(sign);
        const double mu = sign * (m - 1.0) / (m + n - 1.0);
        CHECK(std::fabs(eg.lambda - lam) < 1e-12);
        CHECK(std::fabs(eg.mu - mu) < 1e-12);
        const QEReport rep = qe_verify(eg.smms, eg.smms.interior_grid(65), 1e-9);
        CHECK(rep.max_residual < 1e-9);
        CHECK(std::fabs(rep.lambda_fit - lam) < 1e-9);
        CHECK(std::fabs(rep.mu_fit - mu) < 1e-9);
        // Constant plain scalar curvature n(n-1) lambda / (m+n-1).
        for (double r : eg.smms.interior_grid(9)) {
          CHECK(curvature_data(eg.smms, r).scalar_plain ==
                doctest::Approx(eg.scalar).epsilon(1e-9));
        }
        CHECK(eg.scalar ==
              doctest::Approx(n * (n - 1.0) * lam / (m + n - 1.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Gaussian potentials at m = infinity") {
  for (int sign : {1, -1}) {
    const EllipticGaussian eg = elliptic_gaussian(3, DimParam::pos_inf(), sign);
    CHECK(eg.lambda == double(sign));
    CHECK(eg.mu == double(sign));  // limit of (m-1)/(m+n-1) mu-values
    const QEReport rep = qe_verify(eg.smms, eg.smms.interior_grid(65), 1e-9);
    CHECK(rep.max_residual < 1e-10);
    CHECK(std::fabs(rep.lambda_fit - sign) < 1e-12);
    CHECK(rep.has_mu_prime);
    CHECK(std::fabs(rep.mu_prime_fit) < 1e-9);  // Gaussians sit at mu' = 0
  }
}

TEST_CASE("cigar closes the steady equation at every m") {
  for (double m : {2.0, 5.0, 50.0}) {
    const CigarSolution cig = cigar_solve(DimParam(m), 8.0, 1e-12);
    CHECK(cig.mu == doctest::Approx(4.0 / (m - 1.0)).epsilon(1e-15));
    const QEReport rep = qe_verify(cig.smms, cig.smms.interior_grid(65), 1e-7);
    CHECK(rep.max_residual < 1e-7);
    CHECK(std::fabs(rep.lambda_fit) < 1e-7);
    CHECK(std::fabs(rep.mu_fit - cig.mu) < 1e-7);
    CHECK(rep.mu_variation < 1e-6);
    double worst = 0.0;
    for (const auto& row : cig.trajectory.rows)
      worst = std::max(worst, std::fabs(row.integrability_residual));
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("cigar at m = infinity is the closed form") {
  const CigarSolution cig = cigar_solve(DimParam::pos_inf(), 8.0, 1e-12);
  CHECK(cig.mu == 4.0);
  for (double r : cig.smms.interior_grid(33)) {
    CHECK(std::fabs(cig.smms.psi(r) - std::tanh(r)) < 1e-12);
    CHECK(std::fabs(cig.smms.phi(r) + 2.0 * std::log(std::cosh(r))) < 1e-12);
  }
  const QEReport rep = qe_verify(cig.smms, cig.smms.interior_grid(65), 1e-10);
  CHECK(rep.max_residual < 1e-10);
}

TEST_CASE("finite-m cigars approach the closed form like 1/m") {
  std::vector<double> errs;
  for (double m : {1e2, 1e3, 1e4}) {
    const CigarSolution cig = cigar_solve(DimParam(m), 8.0, 1e-12);
    double sup = 0.0;
    for (double r : cig.smms.interior_grid(65))
      sup = std::max(sup, std::fabs(cig.smms.psi(r) - std::tanh(r)));
    errs.push_back(sup);
  }
  CHECK(errs[0] > 1e-5);  // genuinely away at m = 100
  CHECK(errs[1] < errs[0] / 5.0);
  CHECK(errs[2] < errs[1] / 5.0);
  CHECK(errs[2] < errs[0] / 50.0);
}

TEST_CASE("sphere flow: spectrum at the source and arrival at the sink") {
  const BryantSolution sol = bohm_bryant_solve(3, DimParam(2.0), 600.0, 1e-10);
  CHECK(std::fabs(sol.eigenvalues_at_I[0] + 0.5) < 1e-10);
  CHECK(std::fabs(sol.eigenvalues_at_I[1] - 0.5) < 1e-10);
  CHECK(std::fabs(sol.eigenvalues_at_I[2] - 1.0) < 1e-10);
  const double k3 = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(sol.point_K[i] - k3) < 1e-12);
  const auto& last = sol.trajectory.rows.back().state;
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(last[i] - sol.point_K[i]) < 2e-6);

  // The monitor decreases on every accepted step.
  CHECK(sol.kappa_monotone_steps >= 1000);
  CHECK(sol.kappa_monotone_steps == int(sol.trajectory.rows.size()) - 1);

  double worst = 0.0;
  for (const auto& row : sol.trajectory.rows)
    worst = std::max(worst, std::fabs(row.integrability_residual));
  CHECK(worst < 1e-6);
}

TEST_CASE("sphere flow: asymptotic slope of the reconstructed profile") {
  struct Case {
    int n;
    double m;
  };
  for (const Case& c : {Case{3, 2.0}, Case{4, 3.0}, Case{5, 10.0}}) {
    const BryantSolution sol = bohm_bryant_solve(c.n, DimParam(c.m), 600.0, 1e-10);
    const double target = (c.n - 2.0) / (c.m + c.n - 2.0);
    const double r_probe = sol.smms.r0 + 0.98 * (sol.smms.r1 - sol.smms.r0);
    const double slope = sol.smms.psi.d1(r_probe);
    CHECK(std::fabs(slope * slope - target) < 0.01 * target);
  }
}

TEST_CASE("steady sphere flow at m = infinity grows linearly") {
  const BryantSolution sol = bohm_bryant_solve(3, DimParam::pos_inf(), 600.0, 1e-10);
  CHECK(sol.kappa_monotone_steps == int(sol.trajectory.rows.size()) - 1);
  const BryantAsymptotics asym = bryant_asymptotics_check(sol.trajectory, 3);
  CHECK(asym.psi_sq_exponent > 0.95);
  CHECK(asym.psi_sq_exponent < 1.05);
  CHECK(std::fabs(asym.x_over_y2 - 1.0 / std::sqrt(2.0)) < 0.02);
  CHECK(asym.linear_coeff > 0.0);
}

TEST_CASE("multiprofile bundle family at m = 2") {
  const LppSolution sol = lpp_solve(4, DimParam(2.0), 1, 2, 1e-9);
  CHECK(sol.model.lambda == 1.0);
  CHECK(sol.model.mu == 1.0);  // gauge m - 1
  CHECK(sol.model.base_const == 4.0);
  CHECK(sol.closure_error < 1e-6);
  CHECK(sol.max_integrability < 1e-8);
  CHECK(sol.min_scalar_gap > 0.0);
  CHECK(sol.model.l == doctest::Approx(3.19876082).epsilon(1e-5));

  for (double frac : {0.25, 0.5, 0.75}) {
    const double t = frac * sol.model.l;
    const LppCurvature c = lpp_curvature(sol.model, t);
    CHECK(std::fabs(c.ric_t - 1.0) < 1e-5);
    CHECK(std::fabs(c.ric_fiber - 1.0) < 1e-5);
    CHECK(std::fabs(c.ric_base - 1.0) < 1e-5);
    // Gap above the rigidity level n(n-1) lambda / (m+n-1) = 12/5.
    CHECK(c.scalar_plain > 2.4);
  }

  // Warping away the full density exponent leaves an Einstein product.
  std::vector<double> tgrid;
  for (int i = 0; i <= 32; ++i)
    tgrid.push_back(sol.model.l * (0.05 + 0.9 * i / 32.0));
  const ProductReport pr =
      product_warped_lpp(sol.model, EinsteinFiber{2, sol.model.mu}, tgrid);
  CHECK(pr.m_new.finite());
  CHECK(pr.m_new.value == 0.0);
  CHECK(std::isnan(pr.mu_fit));
  CHECK(std::fabs(pr.lambda_fit - 1.0) < 1e-5);
  CHECK(pr.max_residual < 2e-5);
  CHECK(!pr.notes.empty());
}

TEST_CASE("product constructions inherit the constants") {
  const EllipticGaussian peg = elliptic_gaussian(3, DimParam(3.0), 1);
  const std::vector<double> grid = peg.smms.interior_grid(65);
  const double mu = peg.mu;  // 0.4

  // Unwarped fiber at the Einstein constant lambda.
  const ProductReport flat = product_flat(peg.smms, EinsteinFiber{2, 1.0}, grid);
  CHECK(flat.m_new.finite());
  CHECK(flat.m_new.value == 3.0);
  CHECK(std::fabs(flat.lambda_fit - 1.0) < 1e-9);
  CHECK(flat.max_residual < 1e-8);
  CHECK(std::fabs(flat.mu_fit - mu) < 1e-8);
  CHECK(flat.mu_variation < 1e-8);

  // Warped fiber at the characteristic constant: m drops by k.
  const ProductReport warp = product_warped(peg.smms, EinsteinFiber{2, mu}, grid);
  CHECK(warp.m_new.value == 1.0);
  CHECK(std::fabs(warp.lambda_fit - 1.0) < 1e-9);
  CHECK(warp.max_residual < 1e-8);
  CHECK(std::fabs(warp.mu_fit - mu) < 1e-8);  // invariant under warping
  CHECK(warp.mu_fit != 0.0);

  // k = m exhausts the density: an honest Einstein metric.
  const ProductReport einst = product_warped(peg.smms, EinsteinFiber{3, mu}, grid);
  CHECK(einst.m_new.value == 0.0);
  CHECK(std::fabs(einst.lambda_fit - 1.0) < 1e-9);
  CHECK(einst.max_residual < 1e-8);
  CHECK(std::isnan(einst.mu_fit));
  CHECK(!einst.notes.empty());

  // A fiber at the wrong constant must be loudly rejected.
  const ProductReport bad = product_flat(peg.smms, EinsteinFiber{2, 0.25}, grid);
  CHECK(bad.max_residual > 1e-2);
  const ProductReport bad2 = product_warped(peg.smms, EinsteinFiber{2, 0.9}, grid);
  CHECK(bad2.max_residual > 1e-2);
}
