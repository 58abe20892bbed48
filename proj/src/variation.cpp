#include "qesmms/variation.hpp"

#include <cmath>
#include <stdexcept>

#include "qesmms/curvature.hpp"
#include "qesmms/quadrature.hpp"

namespace qesmms {

namespace {

Jet3 jet_or_zero(const Profile& p, double r) {
  return p.empty() ? jet_constant(0.0) : p.jet(r);
}

// Scalar data of the perturbed space at one point, evaluated in the original
// coordinate through the lapse a = sqrt(1 + t h_rr) and the warped radius
// psi_t = psi sqrt(1 + t h_tan).
struct PerturbedPoint {
  double scalar_weighted;  // R_phi of the perturbed data
  double area;             // a psi_t^{n-1} e^{-phi_t} (weight 1 at m = 0)
  double inv_v2;           // 1/v_t^2 (finite nonzero m); phi_t at |m| = inf
  double phi_t;
};

PerturbedPoint perturbed_point(const RadialSmms& s, const VariationDatum& var,
                               double t, double r) {
  const int n = s.n;
  // Jet-bearing curvature pieces are evaluated at the pole-clamped point
  // (psi stays positive there); measure-side values at r itself, where the
  // area factor vanishing at the pole keeps the product exact.
  const double rc = s.interior_clamp(r);
  const Jet3 hrr = jet_or_zero(var.h_rr, rc);
  const Jet3 htan = jet_or_zero(var.h_tan, rc);

  const double qa_val = 1.0 + t * (var.h_rr.empty() ? 0.0 : var.h_rr(r));
  const Jet3 qa = jet_constant(1.0) + t * hrr;
  if (!(qa_val > 0.0) || !(qa.f > 0.0))
    throw std::domain_error("perturbation too large: 1 + t h_rr <= 0");
  const Jet3 a = jet_pow(qa, 0.5);

  double pt_val = 1.0;
  Jet3 pt = jet_constant(1.0);
  if (n >= 2) {
    const double qt_val = 1.0 + t * (var.h_tan.empty() ? 0.0 : var.h_tan(r));
    const Jet3 qt = jet_constant(1.0) + t * htan;
    if (!(qt_val > 0.0) || !(qt.f > 0.0))
      throw std::domain_error("perturbation too large: 1 + t h_tan <= 0");
    pt_val = s.psi(r) * std::sqrt(qt_val);
    pt = s.psi.jet(rc) * jet_pow(qt, 0.5);
  }

  // Plain scalar curvature of a^2 dr^2 + psi_t^2 g_{S^{n-1}}.
  double R_plain = 0.0;
  const double ia2 = 1.0 / (a.f * a.f);
  if (n >= 2) {
    const double core = (pt.d2 / pt.f) * ia2 - (pt.d1 / pt.f) * (a.d1 / a.f) * ia2;
    const double defect = (pt.d1 * pt.d1) / (pt.f * pt.f) * ia2 - 1.0 / (pt.f * pt.f);
    R_plain = -2.0 * (n - 1) * core - (n - 1.0) * (n - 2.0) * defect;
  }

  auto lap = [&](const Jet3& w) {
    double out = w.d2 * ia2 - w.d1 * a.d1 / (a.f * a.f * a.f);
    if (n >= 2) out += (n - 1) * (pt.d1 / pt.f) * w.d1 * ia2;
    return out;
  };

  PerturbedPoint out;
  out.area = std::sqrt(qa_val) * ((n >= 2) ? std::pow(pt_val, n - 1) : 1.0);
  if (s.m.finite() && s.m.value == 0.0) {
    out.scalar_weighted = R_plain;
    out.inv_v2 = 0.0;
    out.phi_t = 0.0;
    return out;
  }

  const double dphi_val = var.density_var.empty() ? 0.0 : var.density_var(r);
  if (s.m.finite()) {
    const double m = s.m.value;
    const double vt_val = s.v(r) * std::exp((-t / m) * dphi_val);
    // Quadrature points can land a rounding error past a boundary zero of the
    // density base: the weight vanishes there.
    if (!(vt_val > 0.0)) return {0.0, 0.0, 0.0, 0.0};
    const Jet3 dv = jet_or_zero(var.density_var, rc);
    const Jet3 vt = s.v.jet(rc) * jet_exp((-t / m) * dv);
    const double grad2 = (vt.d1 / a.f) * (vt.d1 / a.f);
    out.scalar_weighted =
        R_plain - 2.0 * m * lap(vt) / vt.f - m * (m - 1.0) * grad2 / (vt.f * vt.f);
    out.area *= std::pow(vt_val, m);
    out.inv_v2 = 1.0 / (vt_val * vt_val);
    out.phi_t = -m * std::log(vt_val);
    return out;
  }

  const double ft_val = s.phi(r) + t * dphi_val;
  const Jet3 ft = s.phi.jet(rc) + t * jet_or_zero(var.density_var, rc);
  const double grad2 = (ft.d1 / a.f) * (ft.d1 / a.f);
  out.scalar_weighted = R_plain + 2.0 * lap(ft) - grad2;
  out.area *= std::exp(-ft_val);
  out.inv_v2 = 0.0;
  out.phi_t = ft_val;
  return out;
}

}  // namespace

double variation_norm(const RadialSmms& s, const VariationDatum& var, int grid_points) {
  double worst = 0.0;
  for (double r : s.interior_grid(grid_points, 0.0)) {
    if (!var.h_rr.empty()) worst = std::max(worst, std::fabs(var.h_rr(r)));
    if (!var.h_tan.empty()) worst = std::max(worst, std::fabs(var.h_tan(r)));
    if (!var.density_var.empty()) worst = std::max(worst, std::fabs(var.density_var(r)));
  }
  return worst;
}

double first_variation_analytic(const RadialSmms& s, double mu,
                                const VariationDatum& var) {
  s.validate();
  const int n = s.n;
  const double omega = sphere_area(n);

  auto integrand = [&](double r) -> double {
    const double hrr = var.h_rr.empty() ? 0.0 : var.h_rr(r);
    const double htan = (n >= 2 && !var.h_tan.empty()) ? var.h_tan(r) : 0.0;
    const double dphi = var.density_var.empty() ? 0.0 : var.density_var(r);
    double area = (n >= 2) ? std::pow(s.psi(r), n - 1) : 1.0;

    double vv = 1.0;
    if (s.m.finite() && s.m.value != 0.0) {
      vv = s.v(r);
      if (!(vv > 0.0)) return 0.0;  // degenerate density boundary
    }
    // Curvature factors stay bounded at a rotation pole while their raw radial
    // formulas divide by psi -> 0; evaluate them at the pole-clamped point.
    // The area element vanishes there and variation profiles are compactly
    // supported, so the integral is unchanged.
    const CurvatureData c = curvature_data(s, s.interior_clamp(r));

    double density;
    if (s.m.finite() && s.m.value == 0.0) {
      const double C = c.scalar;
      density = (c.ric_rr - 0.5 * C) * hrr + (n - 1) * (c.ric_tan - 0.5 * C) * htan;
    } else if (s.m.finite()) {
      const double m = s.m.value;
      const double C = c.scalar + m * mu / (vv * vv);
      // -(2/m) lap_phi phi = 2 [lap v / v + (m-1)(v'/v)^2], finite at all m.
      const double S = c.scalar - (2.0 / m) * c.lap_phi_phi + (m - 2.0) * mu / (vv * vv);
      density = (c.ric_rr - 0.5 * C) * hrr + (n - 1) * (c.ric_tan - 0.5 * C) * htan +
                S * dphi;
      area *= std::pow(vv, m);
    } else {
      const double ph = s.phi(r);
      const double C = c.scalar + 2.0 * mu * (ph - n);
      const double S = c.scalar + 2.0 * mu * (ph - n - 1.0);
      density = (c.ric_rr - 0.5 * C) * hrr + (n - 1) * (c.ric_tan - 0.5 * C) * htan +
                S * dphi;
      area *= std::exp(-ph);
    }
    return -density * area;
  };

  IntegralResult ir = integrate(integrand, s.r0, s.r1);
  if (!ir.integrable)
    throw std::domain_error("first_variation_analytic: non-integrable variation density");
  return omega * ir.value;
}

EnergyValue perturbed_energy(const RadialSmms& s, double mu, const VariationDatum& var,
                             double t) {
  s.validate();
  const int n = s.n;
  const double omega = sphere_area(n);
  auto f = [&](double r) -> double {
    const PerturbedPoint p = perturbed_point(s, var, t, r);
    if (s.m.finite() && s.m.value == 0.0) return p.scalar_weighted * p.area;
    if (s.m.finite())
      return (p.scalar_weighted + s.m.value * mu * p.inv_v2) * p.area;
    return (p.scalar_weighted + 2.0 * mu * (p.phi_t - n)) * p.area;
  };
  IntegralResult ir = integrate(f, s.r0, s.r1);
  return {omega * ir.value, ir.integrable, omega * ir.error_estimate};
}

double first_variation_fd(const RadialSmms& s, double mu, const VariationDatum& var,
                          double step) {
  if (!(step > 0.0)) throw std::invalid_argument("first_variation_fd: step must be positive");
  const EnergyValue plus = perturbed_energy(s, mu, var, step);
  const EnergyValue minus = perturbed_energy(s, mu, var, -step);
  if (!plus.integrable || !minus.integrable)
    throw std::domain_error("first_variation_fd: perturbed energy not integrable");
  return (plus.value - minus.value) / (2.0 * step);
}

double delta_scalar_check(const RadialSmms& s, const VariationDatum& var, double r,
                          double step) {
  const CurvatureData c = curvature_data(s, r);
  const int n = s.n;
  const Jet3 hrr = jet_or_zero(var.h_rr, r);
  const Jet3 htan = (n >= 2) ? jet_or_zero(var.h_tan, r) : jet_constant(0.0);
  const Jet3 dphi = jet_or_zero(var.density_var, r);

  double A = 0.0, dA = 0.0;
  if (n >= 2) {
    const Jet3 ps = s.psi.jet(r);
    A = ps.d1 / ps.f;
    dA = ps.d2 / ps.f - A * A;
  }

  const double pairing = c.ric_rr * hrr.f + (n - 1) * c.ric_tan * htan.f;

  // omega = div_phi h as a 1-form, then its weighted divergence.
  const double w = hrr.d1 + (n - 1) * A * (hrr.f - htan.f) - hrr.f * c.phi1;
  double phi2;  // phi''
  if (s.m.finite() && s.m.value == 0.0) {
    phi2 = 0.0;
  } else if (s.m.finite()) {
    const Jet3 vj = s.v.jet(r);
    const double Lv = vj.d1 / vj.f;
    phi2 = -s.m.value * (vj.d2 / vj.f - Lv * Lv);
  } else {
    phi2 = s.phi.jet(r).d2;
  }
  const double dw = hrr.d2 + (n - 1) * (dA * (hrr.f - htan.f) + A * (hrr.d1 - htan.d1)) -
                    hrr.d1 * c.phi1 - hrr.f * phi2;
  const double div2 = dw + (n - 1) * A * w - c.phi1 * w;

  const Jet3 tr{hrr.f + (n - 1) * htan.f, hrr.d1 + (n - 1) * htan.d1,
                hrr.d2 + (n - 1) * htan.d2, 0.0};
  const double lap_tr = tr.d2 + (n - 1) * A * tr.d1 - c.phi1 * tr.d1;

  double pot_term = 0.0;
  if (s.m.finite() && s.m.value == 0.0) {
    pot_term = 0.0;  // density inert: the scalar is unweighted
  } else {
    const double lap_dphi = dphi.d2 + (n - 1) * A * dphi.d1 - c.phi1 * dphi.d1;
    if (s.m.finite()) {
      // -(1/m) <grad phi, grad dphi> = + (v'/v) dphi'.
      const Jet3 vj = s.v.jet(r);
      pot_term = 2.0 * (lap_dphi + (vj.d1 / vj.f) * dphi.d1);
    } else {
      pot_term = 2.0 * lap_dphi;
    }
  }

  const double analytic = -pairing + div2 - lap_tr + pot_term;
  const double fd = (perturbed_point(s, var, step, r).scalar_weighted -
                     perturbed_point(s, var, -step, r).scalar_weighted) /
                    (2.0 * step);
  return std::fabs(analytic - fd);
}

VariationDatum diffeo_variation(const RadialSmms& s, const Profile& chi) {
  VariationDatum var;
  var.h_rr = 2.0 * Profile::derivative(chi);
  if (s.n >= 2)
    var.h_tan = Profile::product({Profile::constant(2.0), chi,
                                  Profile::derivative(Profile::log(s.psi))});
  if (s.m.finite() && s.m.value != 0.0) {
    var.density_var = Profile::product({Profile::constant(-s.m.value), chi,
                                        Profile::derivative(Profile::log(s.v))});
  } else if (s.m.infinite()) {
    var.density_var = Profile::product({chi, Profile::derivative(s.phi)});
  }
  return var;
}

EnergyValue variation_constraint(const RadialSmms& s, const VariationDatum& var) {
  const int n = s.n;
  const double omega = sphere_area(n);
  auto f = [&](double r) -> double {
    const double hrr = var.h_rr.empty() ? 0.0 : var.h_rr(r);
    const double htan = (n >= 2 && !var.h_tan.empty()) ? var.h_tan(r) : 0.0;
    const double dphi = var.density_var.empty() ? 0.0 : var.density_var(r);
    return (dphi - 0.5 * (hrr + (n - 1) * htan)) * s.area_element(r);
  };
  IntegralResult ir = integrate(f, s.r0, s.r1);
  return {omega * ir.value, ir.integrable, omega * ir.error_estimate};
}

}  // namespace qesmms
