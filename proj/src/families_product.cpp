#include <cmath>
#include <limits>
#include <stdexcept>

#include "qesmms/families.hpp"

namespace qesmms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Plain radial Ricci eigenvalues of the base (no density).
struct PlainBlocks {
  double rr = 0.0, tan = 0.0;
};

PlainBlocks plain_blocks(const RadialSmms& s, double r) {
  PlainBlocks b;
  if (s.n >= 2) {
    const Jet3 psi = s.psi.jet(r);
    const double C = psi.d2 / psi.f;
    const double B2 = (psi.d1 * psi.d1 - 1.0) / (psi.f * psi.f);
    b.rr = -(s.n - 1.0) * C;
    b.tan = -C - (s.n - 2.0) * B2;
  }
  return b;
}

void fit_stats(const std::vector<double>& samples, double& mean, double& var) {
  mean = 0.0;
  for (double x : samples) mean += x;
  mean /= double(samples.size());
  var = 0.0;
  for (double x : samples) var = std::max(var, std::fabs(x - mean));
}

}  // namespace

ProductReport product_flat(const RadialSmms& s, const EinsteinFiber& fiber,
                           const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("product_flat: empty grid");
  if (fiber.k < 1) throw std::invalid_argument("product_flat: fiber dimension >= 1");
  ProductReport rep;
  rep.m_new = s.m;  // unwarped fiber leaves the density structure alone
  const int n = s.n, k = fiber.k;
  const double e = fiber.einstein_const;

  std::vector<double> lam_pts;
  lam_pts.reserve(grid.size());
  double max_res = 0.0;
  for (double r : grid) {
    const auto [rr, tan] = bakry_emery_ricci(s, r);
    lam_pts.push_back((rr + (n - 1.0) * tan + k * e) / double(n + k));
  }
  double lam_fit, lam_var;
  fit_stats(lam_pts, lam_fit, lam_var);
  for (double r : grid) {
    const auto [rr, tan] = bakry_emery_ricci(s, r);
    max_res = std::max(max_res, std::fabs(rr - lam_fit));
    if (n >= 2) max_res = std::max(max_res, std::fabs(tan - lam_fit));
  }
  max_res = std::max(max_res, std::fabs(e - lam_fit));
  rep.lambda_fit = lam_fit;
  rep.max_residual = max_res;

  // Characteristic constant of the product, pointwise.
  if (s.m.kind == DimParam::Kind::Finite && s.m.value != 0.0) {
    const double m = s.m.value;
    std::vector<double> mu_pts;
    mu_pts.reserve(grid.size());
    for (double r : grid) {
      const double Rphi = weighted_scalar(s, r) + k * e;
      const Jet3 v = s.density_jet(r).has_v ? s.density_jet(r).v : Jet3{};
      mu_pts.push_back(((m + n + k) * lam_fit - Rphi) * v.f * v.f / m);
    }
    fit_stats(mu_pts, rep.mu_fit, rep.mu_variation);
  } else if (s.m.kind == DimParam::Kind::PosInf) {
    std::vector<double> mu_pts;
    mu_pts.reserve(grid.size());
    for (double r : grid) {
      const double Rphi = weighted_scalar(s, r) + k * e;
      const double phi = s.density_jet(r).phi.f;
      mu_pts.push_back(-(Rphi + 2.0 * lam_fit * (phi - double(n + k))));
    }
    fit_stats(mu_pts, rep.mu_fit, rep.mu_variation);
    rep.notes.push_back("m = +inf: characteristic column reports mu'");
  } else {
    rep.mu_fit = kNaN;
    rep.mu_variation = 0.0;
    rep.notes.push_back(s.m.kind == DimParam::Kind::NegInf
                            ? "m = -inf: no mu' normalization available"
                            : "m = 0: density is inert, no characteristic constant");
  }
  return rep;
}

ProductReport product_warped(const RadialSmms& s, const EinsteinFiber& fiber,
                             const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("product_warped: empty grid");
  if (fiber.k < 1) throw std::invalid_argument("product_warped: fiber dimension >= 1");
  if (s.m.kind != DimParam::Kind::Finite || s.m.value == 0.0)
    throw std::invalid_argument("product_warped: finite nonzero m required");
  const int n = s.n, k = fiber.k;
  const double m = s.m.value, e = fiber.einstein_const;
  ProductReport rep;
  rep.m_new = DimParam(m - k);

  std::vector<double> lam_pts, fib_pts, lapv_pts;
  lam_pts.reserve(grid.size());
  for (double r : grid) {
    const PlainBlocks pb = plain_blocks(s, r);
    const Jet3 v = s.v.jet(r);
    const double Hv = v.d2 / v.f;
    const double A = (n >= 2) ? s.psi.jet(r).d1 / s.psi.jet(r).f : 0.0;
    const double ALv = A * v.d1 / v.f;
    // Base blocks: warp Hessian (k copies) plus the residual density
    // exponent m - k reassemble the original Bakry-Emery tensor.
    const double rr = pb.rr - k * Hv - (m - k) * Hv;
    const double tan = pb.tan - k * ALv - (m - k) * ALv;
    const double lapv = v.d2 + (n - 1.0) * A * v.d1;
    const double fib =
        (e - v.f * lapv - (m - 1.0) * v.d1 * v.d1) / (v.f * v.f);
    lam_pts.push_back((rr + (n - 1.0) * tan + k * fib) / double(n + k));
    fib_pts.push_back(fib);
    lapv_pts.push_back(lapv);
  }
  double lam_fit, lam_var;
  fit_stats(lam_pts, lam_fit, lam_var);
  double max_res = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const PlainBlocks pb = plain_blocks(s, r);
    const Jet3 v = s.v.jet(r);
    const double Hv = v.d2 / v.f;
    const double A = (n >= 2) ? s.psi.jet(r).d1 / s.psi.jet(r).f : 0.0;
    const double rr = pb.rr - m * Hv;
    const double tan = pb.tan - m * A * v.d1 / v.f;
    max_res = std::max(max_res, std::fabs(rr - lam_fit));
    if (n >= 2) max_res = std::max(max_res, std::fabs(tan - lam_fit));
    max_res = std::max(max_res, std::fabs(fib_pts[i] - lam_fit));
  }
  rep.lambda_fit = lam_fit;
  rep.max_residual = max_res;

  if (k == int(m) && double(k) == m) {
    rep.mu_fit = kNaN;
    rep.mu_variation = 0.0;
    rep.notes.push_back(
        "m - k = 0: density exponent exhausted, Einstein comparison only");
  } else {
    std::vector<double> mu_pts;
    mu_pts.reserve(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
      const Jet3 v = s.v.jet(grid[i]);
      const double mu_pt = lam_fit * v.f * v.f + v.f * lapv_pts[i] +
                           (m - 1.0) * v.d1 * v.d1;
      mu_pts.push_back((m * mu_pt - k * e) / (m - k));
    }
    fit_stats(mu_pts, rep.mu_fit, rep.mu_variation);
  }
  return rep;
}

ProductReport product_warped_lpp(const MultiProfileSmms& mp, const EinsteinFiber& fiber,
                                 const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("product_warped_lpp: empty grid");
  if (fiber.k < 1)
    throw std::invalid_argument("product_warped_lpp: fiber dimension >= 1");
  if (mp.m.kind != DimParam::Kind::Finite || mp.m.value == 0.0)
    throw std::invalid_argument("product_warped_lpp: finite nonzero m required");
  const int n = mp.n, k = fiber.k;
  const double m = mp.m.value, e = fiber.einstein_const;
  ProductReport rep;
  rep.m_new = DimParam(m - k);

  std::vector<double> lam_pts, fib_pts, lapv_pts;
  for (double t : grid) {
    const LppCurvature c = lpp_curvature(mp, t);
    const Jet3 f = mp.f.jet(t), h = mp.h.jet(t), v = mp.v.jet(t);
    const double lapv =
        v.d2 + (f.d1 / f.f + (n - 2.0) * h.d1 / h.f) * v.d1;
    const double fib =
        (e - v.f * lapv - (m - 1.0) * v.d1 * v.d1) / (v.f * v.f);
    lam_pts.push_back(
        (c.ric_t + c.ric_fiber + (n - 2.0) * c.ric_base + k * fib) /
        double(n + k));
    fib_pts.push_back(fib);
    lapv_pts.push_back(lapv);
  }
  double lam_fit, lam_var;
  fit_stats(lam_pts, lam_fit, lam_var);
  double max_res = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const LppCurvature c = lpp_curvature(mp, grid[i]);
    max_res = std::max({max_res, std::fabs(c.ric_t - lam_fit),
                        std::fabs(c.ric_fiber - lam_fit),
                        std::fabs(c.ric_base - lam_fit),
                        std::fabs(fib_pts[i] - lam_fit)});
  }
  rep.lambda_fit = lam_fit;
  rep.max_residual = max_res;

  if (k == int(m) && double(k) == m) {
    rep.mu_fit = kNaN;
    rep.mu_variation = 0.0;
    rep.notes.push_back(
        "m - k = 0: density exponent exhausted, Einstein comparison only");
  } else {
    std::vector<double> mu_pts;
    for (size_t i = 0; i < grid.size(); ++i) {
      const Jet3 v = mp.v.jet(grid[i]);
      const double mu_pt = lam_fit * v.f * v.f + v.f * lapv_pts[i] +
                           (m - 1.0) * v.d1 * v.d1;
      mu_pts.push_back((m * mu_pt - k * e) / (m - k));
    }
    fit_stats(mu_pts, rep.mu_fit, rep.mu_variation);
  }
  return rep;
}

}  // namespace qesmms
