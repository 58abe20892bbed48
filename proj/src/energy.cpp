#include "qesmms/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "qesmms/curvature.hpp"
#include "qesmms/quadrature.hpp"

namespace qesmms {

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere_area: n >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

EnergyValue weighted_volume(const RadialSmms& s) {
  s.validate();
  const double omega = sphere_area(s.n);
  auto f = [&s](double r) { return s.area_element(r); };
  IntegralResult ir = integrate(f, s.r0, s.r1);
  return {omega * ir.value, ir.integrable, omega * ir.error_estimate};
}

EnergyValue energy(const RadialSmms& s, double mu) {
  s.validate();
  const double omega = sphere_area(s.n);
  // Curvature factors are evaluated at the pole-clamped point (they stay
  // bounded while the area element vanishes); measure factors at r itself.
  auto f = [&s, mu](double r) {
    const double rc = s.interior_clamp(r);
    if (s.m.finite()) {
      if (s.m.value == 0.0)
        return curvature_data(s, rc).scalar * s.area_element(r);
      const double vv = s.v(r);
      if (!(vv > 0.0)) return 0.0;  // degenerate density boundary
      double a = 1.0;
      if (s.n >= 2) a = std::pow(s.psi(r), s.n - 1);
      // m mu / v^2 folded into the weight: m mu v^{m-2} stays finite (or
      // integrably singular) through a density zero.
      return (weighted_scalar(s, rc) * std::pow(vv, s.m.value) +
              s.m.value * mu * std::pow(vv, s.m.value - 2.0)) *
             a;
    }
    const double ph = s.phi(r);
    return (weighted_scalar(s, rc) + 2.0 * mu * (ph - s.n)) * s.area_element(r);
  };
  IntegralResult ir = integrate(f, s.r0, s.r1);
  return {omega * ir.value, ir.integrable, omega * ir.error_estimate};
}

EnergyLimitReport energy_limit_check(const RadialSmms& inf_model, double mu,
                                     const std::vector<double>& m_values) {
  if (!(inf_model.m.kind == DimParam::Kind::PosInf))
    throw std::invalid_argument("energy_limit_check: pass the m = +inf model");
  EnergyLimitReport rep;
  const EnergyValue winf = energy(inf_model, mu);
  if (!winf.integrable) throw std::domain_error("energy_limit_check: limit energy not integrable");
  rep.w_inf = winf.value;

  for (double m : m_values) {
    if (!(m > 0.0)) throw std::invalid_argument("energy_limit_check: m values must be positive");
    RadialSmms s = inf_model;
    s.m = DimParam(m);
    // v^m = e^{-phi} pointwise: same weight at every finite member.
    s.v = Profile::exp(Profile::product({Profile::constant(-1.0 / m), inf_model.phi}));
    s.density_kind = DensityKind::V;
    s.phi = Profile();
    const EnergyValue w = energy(s, mu);
    const EnergyValue vol = weighted_volume(s);
    if (!w.integrable || !vol.integrable)
      throw std::domain_error("energy_limit_check: finite-m member not integrable");
    EnergyLimitRow row;
    row.m = m;
    row.value = w.value - (m + 2.0 * inf_model.n) * vol.value;
    row.error = std::fabs(row.value - rep.w_inf);
    rep.rows.push_back(row);
  }
  rep.decreasing = true;
  for (size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].error < rep.rows[i - 1].error)) rep.decreasing = false;
  return rep;
}

}  // namespace qesmms
