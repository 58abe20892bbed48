/** First variation of the curvature energy.
 *
 * A variation consists of a symmetric 2-tensor direction h (radial ansatz:
 * eigenprofiles h_rr, h_tan) and a potential direction given by
 * delta(phi) = +density_var; at finite nonzero m this moves the density as
 * v_t = v e^{-t density_var / m}, keeping v^m = e^{-phi} aligned.  All
 * variation profiles are expected to be compactly supported in the open
 * interval, so boundary terms vanish.
 *
 * first_variation_analytic integrates the closed-form variation density
 *   -[ <Ric_phi - (1/2)(R_phi + m mu v^{-2}) g, h>
 *      + (R_phi - (2/m) lap_phi phi + (m-2) mu v^{-2}) delta(phi) ] dmeasure,
 * with the degenerate forms at m = 0 (every density term drops; the
 * integrand is the unweighted Einstein-Hilbert one) and at m = +/-inf
 * (coefficients R_phi + 2 mu (phi - n) and R_phi + 2 mu (phi - n - 1)).
 *
 * first_variation_fd computes the centered difference
 *   (W(s + t var) - W(s - t var)) / (2t)
 * by evaluating the perturbed metric g_t = (1 + t h_rr) dr^2 +
 * psi^2 (1 + t h_tan) g_{S^{n-1}} in the ORIGINAL coordinate through a
 * lapse; no resampling is involved, so the difference against the analytic
 * value is O(t^2) with a constant set by the variation, not by grid error.
 */
#pragma once

#include "qesmms/energy.hpp"
#include "qesmms/smms.hpp"

namespace qesmms {

struct VariationDatum {
  Profile h_rr;         // empty = zero
  Profile h_tan;        // empty = zero; ignored at n = 1
  Profile density_var;  // delta(phi); ignored at m = 0
};

// Sup of |h_rr|, |h_tan|, |density_var| over a fine grid.
double variation_norm(const RadialSmms& s, const VariationDatum& var,
                      int grid_points = 1024);

double first_variation_analytic(const RadialSmms& s, double mu,
                                const VariationDatum& var);

// Energy of the perturbed space at parameter t (exposed for convergence
// studies).
EnergyValue perturbed_energy(const RadialSmms& s, double mu,
                             const VariationDatum& var, double t);

double first_variation_fd(const RadialSmms& s, double mu, const VariationDatum& var,
                          double step);

// Pointwise check of the weighted-scalar variation formula at r:
// compares the analytic expression
//   -<Ric_phi, h> + div_phi^2 h - lap_phi tr h
//   + 2 (lap_phi dphi - (1/m) <grad phi, grad dphi>)
// against a centered difference of the perturbed weighted scalar; returns
// |analytic - fd|, which is O(step^2) for smooth data.
double delta_scalar_check(const RadialSmms& s, const VariationDatum& var, double r,
                          double step = 1e-4);

// The variation generated by the radial diffeomorphism flow of chi d/dr:
// h = 2 Hess-type deformation (h_rr = 2 chi', h_tan = 2 chi psi'/psi) and
// delta(phi) = chi phi'.  The mu = 0 energy is diffeomorphism invariant, so
// its first variation along this datum vanishes.
VariationDatum diffeo_variation(const RadialSmms& s, const Profile& chi);

// Constraint functional int (delta(phi) - tr h / 2) dmeasure whose kernel
// is the constrained-criticality domain at quasi-Einstein points.
EnergyValue variation_constraint(const RadialSmms& s, const VariationDatum& var);

}  // namespace qesmms
