#include "qesmms/smms.hpp"

#include <cmath>
#include <stdexcept>

namespace qesmms {

void RadialSmms::validate() const {
  if (n < 1) throw std::invalid_argument("RadialSmms: n must be >= 1");
  if (!(r1 > r0)) throw std::invalid_argument("RadialSmms: empty domain");
  if (n >= 2 && psi.empty()) throw std::invalid_argument("RadialSmms: psi required for n >= 2");
  if (m.finite()) {
    if (m.value != 0.0 && v.empty())
      throw std::invalid_argument("RadialSmms: density v required at finite nonzero m");
    if (m.value == 0.0 && v.empty() && phi.empty())
      throw std::invalid_argument("RadialSmms: record a density (v or phi) even at m = 0");
  } else if (phi.empty()) {
    throw std::invalid_argument("RadialSmms: potential phi required at m = +/-inf");
  }
}

DensityJet RadialSmms::density_jet(double r) const {
  DensityJet d;
  if (m.finite()) {
    if (m.value == 0.0) {
      d.phi = jet_constant(0.0);  // inert density
      return d;
    }
    d.has_v = true;
    d.v = v.jet(r);
    if (!(d.v.f > 0.0)) throw std::domain_error("RadialSmms: density v must stay positive");
    d.phi = (-m.value) * jet_log(d.v);
    return d;
  }
  d.phi = phi.jet(r);
  return d;
}

double RadialSmms::log_weight(double r) const {
  if (m.finite() && m.value == 0.0) return 0.0;
  return -density_jet(r).phi.f;
}

std::vector<double> RadialSmms::interior_grid(int count, double margin) const {
  if (count < 2) throw std::invalid_argument("interior_grid: need at least 2 points");
  std::vector<double> g(count);
  const double len = r1 - r0;
  for (int i = 0; i < count; ++i)
    g[i] = r0 + len * (margin + (1.0 - 2.0 * margin) * i / (count - 1));
  return g;
}

double RadialSmms::interior_clamp(double r) const {
  const double len = r1 - r0;
  const double d = 1e-5 * (std::isfinite(len) ? len : 1.0);
  if (pole_left && r < r0 + d) return r0 + d;
  if (pole_right && r > r1 - d) return r1 - d;
  return r;
}

double RadialSmms::area_element(double r) const {
  double a = 1.0;
  if (n >= 2) a = std::pow(psi(r), n - 1);
  if (m.finite() && m.value == 0.0) return a;
  if (m.finite()) {
    const double vv = v(r);
    // At a boundary where the density base degenerates, quadrature points
    // can land a rounding error past the zero; the weight vanishes there.
    if (!(vv > 0.0)) return 0.0;
    return a * std::pow(vv, m.value);
  }
  return a * std::exp(-phi(r));
}

}  // namespace qesmms
