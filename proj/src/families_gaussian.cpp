#include <cmath>
#include <stdexcept>

#include "qesmms/families.hpp"

namespace qesmms {

EllipticGaussian elliptic_gaussian(int n, const DimParam& m, int sign) {
  if (n < 1) throw std::invalid_argument("elliptic_gaussian: n >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("elliptic_gaussian: sign is +1 or -1");
  if (m.kind == DimParam::Kind::NegInf)
    throw std::invalid_argument("elliptic_gaussian: no m = -inf member");

  EllipticGaussian out;
  RadialSmms s;
  s.n = n;
  s.m = m;

  if (m.finite()) {
    if (!(m.value > 1.0 - n))
      throw std::invalid_argument("elliptic_gaussian: requires m > 1 - n");
    const double k = std::sqrt(m.value + n - 1.0);
    if (sign > 0) {
      // psi = k sin(r/k), v = cos(r/k) on (0, k pi/2); v degenerates at the
      // right end, the pole closes the left end.
      s.r0 = 0.0;
      s.r1 = k * M_PI / 2.0;
      if (n >= 2) s.psi = Profile::sin(k, 1.0 / k);
      s.v = Profile::cos(1.0, 1.0 / k);
      s.pole_left = (n >= 2);
      out.lambda = 1.0;
    } else {
      s.r0 = 0.0;
      s.r1 = 2.0 * k;  // noncompact model, truncated at a representative window
      if (n >= 2) s.psi = Profile::sinh(k, 1.0 / k);
      s.v = Profile::cosh(1.0, 1.0 / k);
      s.pole_left = (n >= 2);
      out.lambda = -1.0;
    }
    out.mu = out.lambda * (m.value - 1.0) / (m.value + n - 1.0);
    out.scalar = out.lambda * n * (n - 1.0) / (m.value + n - 1.0);
    s.density_kind = DensityKind::V;
  } else {
    // Gaussian limit: flat metric, phi = sign * r^2 / 2.
    s.r0 = 0.0;
    s.r1 = 8.0;  // weight decays like e^{-r^2/2}; window covers the mass
    if (n >= 2) s.psi = Profile::polynomial({0.0, 1.0});
    s.phi = Profile::polynomial({0.0, 0.0, sign * 0.5});
    s.density_kind = DensityKind::Phi;
    s.pole_left = (n >= 2);
    out.lambda = sign;
    out.mu = out.lambda;  // convention at |m| = inf
    out.scalar = 0.0;
  }

  s.validate();
  out.smms = s;
  return out;
}

}  // namespace qesmms
