/** Weighted volume and the curvature energy functional.
 *
 * For a radial SMMS the functionals reduce to one-dimensional integrals
 * against the weighted area element omega_{n-1} v^m psi^{n-1} dr, where
 * omega_{n-1} = 2 pi^{n/2} / Gamma(n/2) is the area of the unit (n-1)-sphere
 * (omega_0 = 2: the two endpoints of an interval's worth of rays; an n = 1
 * model therefore integrates both rays of the line).
 *
 * energy(s, mu) integrates the weighted scalar curvature plus the
 * characteristic-constant correction:
 *   finite m != 0:  integrand  (R_phi + m mu / v^2) v^m psi^{n-1}
 *   m = 0:          integrand  R psi^{n-1}            (mu drops out)
 *   m = +/-inf:     integrand  (R_phi + 2 mu (phi - n)) e^{-phi} psi^{n-1}
 * Divergent or non-integrable data is reported, not silently truncated.
 */
#pragma once

#include <array>
#include <vector>

#include "qesmms/smms.hpp"

namespace qesmms {

struct EnergyValue {
  double value = 0.0;
  bool integrable = true;
  double error_estimate = 0.0;
};

double sphere_area(int n);  // omega_{n-1}

EnergyValue weighted_volume(const RadialSmms& s);
EnergyValue energy(const RadialSmms& s, double mu);

// For phi fixed and m -> inf with weights v = e^{-phi/m}:
// W_mu^m - (m+2n) Vol  ->  W_mu^inf when mu = 1; rows record the finite-m
// values and their distance to the limit functional.
struct EnergyLimitRow {
  double m;
  double value;   // W_mu^m - (m+2n) Vol
  double error;   // |value - W^inf|
};
struct EnergyLimitReport {
  std::vector<EnergyLimitRow> rows;
  double w_inf = 0.0;
  bool decreasing = false;  // errors decrease along the sequence
};
EnergyLimitReport energy_limit_check(const RadialSmms& inf_model, double mu,
                                     const std::vector<double>& m_values);

}  // namespace qesmms
