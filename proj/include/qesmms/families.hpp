/** Constructors and solvers for the model families.
 *
 * elliptic_gaussian: closed-form compact/noncompact models with
 *   psi = k sin(r/k) or k sinh(r/k), v = cos(r/k) or cosh(r/k),
 *   k = sqrt(m+n-1); at m = +inf the Gaussian potential phi = +- r^2/2 on
 *   psi = r.  Quasi-Einstein with lambda = +-1, mu = +-(m-1)/(m+n-1).
 *
 * cigar_solve: steady complete model at lambda = 0, mu = 4/(m-1) for
 *   m in (1, inf]; the density solves ((m-1) v'/2)^2 = 1 - v^{1-m} from
 *   v(0) = 1 and the warped radius is psi = v' (m-1)/2... closed forms:
 *   psi^2 = 1 - v^{1-m}, psi' = v^{-m}.  At m = inf: psi = tanh t,
 *   phi = -2 log cosh t.
 *
 * bohm_bryant_solve: the rotationally invariant steady system projected on
 *   the invariant sphere X^2 + Y^2 + W^2 = 1; integrates from the unstable
 *   direction at the critical point I toward the sink K, reconstructing
 *   (r, psi, v) along the way, with the Lyapunov monitor kappa decreasing.
 *
 * lpp_solve: circle-bundle ansatz over a Kahler-Einstein base (dim n-2,
 *   Einstein constant n, integers 1 <= s < q); shoots (h0, v0, lambda) from
 *   the series startup at the axis to the closing conditions at the first
 *   zero of f, with mu normalized to m-1 (mu' = 0 at m = inf).
 *
 * product_flat / product_warped: checked constructions of (M x F, g + h)
 *   resp. (M x F, g + v^2 h) with Einstein fibers; block residual reports.
 */
#pragma once

#include <optional>

#include "qesmms/curvature.hpp"
#include "qesmms/smms.hpp"
#include "qesmms/trajectory.hpp"

namespace qesmms {

// Thrown when an iterative solver fails to meet its convergence target.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- gaussians
struct EllipticGaussian {
  RadialSmms smms;
  double lambda = 0.0;
  double mu = 0.0;        // (m-1)/(m+n-1) signed; equals lambda at m = inf
  double scalar = 0.0;    // constant plain scalar curvature (finite m)
};
// sign = +1: compact spherical model; sign = -1: hyperbolic model.
// Preconditions: n >= 1, m > 1-n (finite) or m = +inf.
EllipticGaussian elliptic_gaussian(int n, const DimParam& m, int sign);

// ------------------------------------------------------------------- cigar
struct CigarSolution {
  RadialSmms smms;        // n = 2 model on [t0, t_max]
  double mu = 0.0;        // 4/(m-1); mu' = 4 at m = inf
  Trajectory trajectory;
};
CigarSolution cigar_solve(const DimParam& m, double t_max, double tol);

// ------------------------------------------------------------ Bohm/Bryant
struct BryantSolution {
  RadialSmms smms;            // reconstructed radial data on [r_eps, r_end]
  double mu = 0.0;            // normalization 1/(m-1); mu' = 1 at m = inf
  Trajectory trajectory;
  std::array<double, 3> point_I{}, point_K{};
  std::array<double, 3> eigenvalues_at_I{};  // sorted ascending
  // Accepted steps on which the Lyapunov monitor did not increase.  Near the
  // sink the true decrement falls below one ulp of kappa and successive
  // values can quantize to the same double, so bitwise equality is not
  // counted as a violation; any increase breaks the count.
  int kappa_monotone_steps = 0;
};
// Integrates from the unstable direction at I toward the sink K.  At finite m
// the sink is hyperbolic and must be reached (within 1e-6) inside t_span; at
// m = inf the approach is only polynomial (distance ~ 1/t), so the full
// window is integrated instead and no arrival is required.
BryantSolution bohm_bryant_solve(int n, const DimParam& m, double t_span, double tol);

// Lyapunov-type monitor kappa(X, Y, W); strictly decreasing along
// trajectories in the open first octant of the invariant sphere.
double lyapunov_kappa(int n, const DimParam& m, const std::array<double, 3>& state);

struct BryantAsymptotics {
  double psi_sq_exponent = 0.0;  // fitted d log(psi^2) / d log(r) on the tail
  double x_over_y2 = 0.0;        // tail mean of X/Y^2 (target 1/sqrt(n-1))
  double linear_coeff = 0.0;     // tail mean of psi^2 / r
};
// m = +inf only: checks the linear-volume-growth asymptotics.
BryantAsymptotics bryant_asymptotics_check(const Trajectory& traj, int n);

// ---------------------------------------------------------------------- LPP
struct MultiProfileSmms {
  int n = 4;            // total dimension (t-line + S^1 fiber + base)
  DimParam m;
  int s = 1, q = 2;     // bundle integers, 1 <= s < q
  double base_const = 0.0;  // base Einstein constant (= n)
  double l = 0.0;       // domain [0, l]
  Profile f, h;         // S^1 and base profiles
  Profile v, phi;       // density (v at finite m, phi at m = inf)
  double lambda = 0.0, mu = 0.0;
};

struct LppSolution {
  MultiProfileSmms model;
  Trajectory trajectory;
  // max of |f'(l) + 1| and the singular-mode coefficients of h', v' at the
  // closing section (the protocol-independent closure obstructions):
  double closure_error = 0.0;
  double max_integrability = 0.0;      // worst first-integral residual
  double min_scalar_gap = 0.0;         // min over grid of R - n(n-1)lambda/(m+n-1)
};
LppSolution lpp_solve(int n, const DimParam& m, int s, int q, double tol);

// Ricci eigencomponents of the multiprofile ansatz at t (plain, weighted):
struct LppCurvature {
  double ric_t, ric_fiber, ric_base;     // Bakry-Emery eigenvalues
  double plain_t, plain_fiber, plain_base;
  double scalar_plain;
};
LppCurvature lpp_curvature(const MultiProfileSmms& mp, double t);

// ----------------------------------------------------------------- products
struct EinsteinFiber {
  int k = 2;             // fiber dimension
  double einstein_const = 0.0;  // Ric_h = einstein_const * h (per h-unit)
};

struct ProductReport {
  DimParam m_new;
  double lambda_fit = 0.0;
  double max_residual = 0.0;   // worst block eigenvalue deviation from lambda
  double mu_fit = 0.0;         // NaN when m_new = 0 (Einstein case)
  double mu_variation = 0.0;
  std::vector<std::string> notes;
};

// (M x F, g + h, v^m): fiber block must carry Einstein constant lambda.
ProductReport product_flat(const RadialSmms& s, const EinsteinFiber& fiber,
                           const std::vector<double>& grid);

// (M x F, g + v^2 h, v^{m-k}): base block reproduces the original
// Bakry-Emery tensor; the fiber block closes iff einstein_const = mu.
ProductReport product_warped(const RadialSmms& s, const EinsteinFiber& fiber,
                             const std::vector<double>& grid);

// Warped product over an LPP multiprofile base (the same fiber-block
// identity, with the multiprofile Laplacian).
ProductReport product_warped_lpp(const MultiProfileSmms& mp, const EinsteinFiber& fiber,
                                 const std::vector<double>& grid);

}  // namespace qesmms
