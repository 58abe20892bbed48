#include <boost/numeric/odeint.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "qesmms/families.hpp"

namespace qesmms {

namespace {

// Coefficients of the invariant-sphere system and the reconstruction flow.
struct SphereSystem {
  int n;
  bool inf;
  double m;     // finite value; unused when inf
  double c1;    // coupling in the X/Y equations
  double invm1; // 1/(m-1); 0 at m = inf
  double beta;  // d log psi / dt = beta X
  double gamma; // dr/dt = gamma psi Y
  double slope; // psi' = X / (slope_c Y): stored as 1/c
  double xk;    // X-coordinate of the sink K

  std::array<double, 3> rhs(const std::array<double, 3>& p) const {
    const double X = p[0], Y = p[1], W = p[2];
    const double shear = X * X - invm1 * Y * Y;
    return {X * shear + c1 * Y * Y - X,
            Y * shear - c1 * X * Y + invm1 * Y,
            W * shear};
  }

  // Analytic Jacobian of rhs.
  Eigen::Matrix3d jacobian(const std::array<double, 3>& p) const {
    const double X = p[0], Y = p[1], W = p[2];
    Eigen::Matrix3d J;
    J(0, 0) = 3.0 * X * X - invm1 * Y * Y - 1.0;
    J(0, 1) = -2.0 * invm1 * X * Y + 2.0 * c1 * Y;
    J(0, 2) = 0.0;
    J(1, 0) = 2.0 * X * Y - c1 * Y;
    J(1, 1) = X * X - 3.0 * invm1 * Y * Y - c1 * X + invm1;
    J(1, 2) = 0.0;
    J(2, 0) = 2.0 * X * W;
    J(2, 1) = -2.0 * invm1 * Y * W;
    J(2, 2) = X * X - invm1 * Y * Y;
    return J;
  }
};

SphereSystem make_system(int n, const DimParam& m) {
  if (n < 3) throw std::invalid_argument("bohm_bryant_solve: n >= 3 required");
  if (m.kind == DimParam::Kind::NegInf)
    throw std::invalid_argument("bohm_bryant_solve: family lives on m in (1, +inf]");
  SphereSystem sys;
  sys.n = n;
  sys.inf = m.infinite();
  if (sys.inf) {
    sys.m = 0.0;
    sys.invm1 = 0.0;
    sys.c1 = 1.0 / std::sqrt(n - 1.0);
    sys.beta = 1.0 / std::sqrt(n - 1.0);
    sys.gamma = 1.0 / std::sqrt((n - 1.0) * (n - 2.0));
    sys.slope = std::sqrt(n - 2.0);  // psi' = slope * X / Y ... 1/c
    sys.xk = 0.0;
  } else {
    const double mv = m.value;
    if (!(mv > 1.0)) throw std::invalid_argument("bohm_bryant_solve: finite m must exceed 1");
    sys.m = mv;
    sys.invm1 = 1.0 / (mv - 1.0);
    sys.c1 = sys.invm1 * std::sqrt(mv * (mv + n - 2.0) / (n - 1.0));
    sys.beta = std::sqrt(mv / ((n - 1.0) * (mv + n - 2.0)));
    sys.gamma = std::sqrt(mv / ((mv - 1.0) * (n - 1.0) * (n - 2.0)));
    sys.slope = std::sqrt((mv - 1.0) * (n - 2.0) / (mv + n - 2.0));
    sys.xk = std::sqrt((n - 1.0) / (mv * (mv + n - 2.0)));
  }
  return sys;
}

std::array<double, 3> point_I(int n, const DimParam& m) {
  if (m.infinite())
    return {1.0 / std::sqrt(n - 1.0), std::sqrt((n - 2.0) / (n - 1.0)), 0.0};
  const double mv = m.value;
  return {std::sqrt((mv + n - 2.0) / (mv * (n - 1.0))),
          std::sqrt((mv - 1.0) * (n - 2.0) / (mv * (n - 1.0))), 0.0};
}

std::array<double, 3> point_K(int n, const DimParam& m) {
  if (m.infinite()) return {0.0, 0.0, 1.0};
  const double mv = m.value;
  return {std::sqrt((n - 1.0) / (mv * (mv + n - 2.0))),
          std::sqrt((mv - 1.0) * (n - 1.0) / (mv * (mv + n - 2.0))),
          std::sqrt((mv - 1.0) / (mv + n - 2.0))};
}

}  // namespace

double lyapunov_kappa(int n, const DimParam& m, const std::array<double, 3>& state) {
  const double X = state[0], Y = state[1], W = state[2];
  if (m.infinite()) return 1.0 / (W * W);
  const double mv = m.value;
  const double xk = std::sqrt((n - 1.0) / (mv * (mv + n - 2.0)));
  const double a = -2.0 * mv / (mv + n - 1.0);
  const double b = -2.0 * (n - 1.0) / (mv + n - 1.0);
  const double lin = 1.0 - xk * X;
  return std::pow(W, a) * std::pow(Y, b) * lin * lin;
}

BryantSolution bohm_bryant_solve(int n, const DimParam& m, double t_span, double tol) {
  const SphereSystem sys = make_system(n, m);
  BryantSolution out;
  out.point_I = point_I(n, m);
  out.point_K = point_K(n, m);
  out.mu = sys.inf ? 1.0 : 1.0 / (sys.m - 1.0);

  // Spectrum of the linearization at I.
  {
    Eigen::Matrix3d J = sys.jacobian(out.point_I);
    Eigen::EigenSolver<Eigen::Matrix3d> es(J);
    std::array<double, 3> ev{es.eigenvalues()[0].real(), es.eigenvalues()[1].real(),
                             es.eigenvalues()[2].real()};
    std::sort(ev.begin(), ev.end());
    out.eigenvalues_at_I = ev;
  }

  // Augmented state: (X, Y, W, log psi, q, r) with q = log v (finite m) or
  // phi (m = inf).  The displacement off I must be taken in the W direction
  // (the unstable eigenvector tangent to the invariant sphere); a radial
  // displacement would be quadratically small and drown in roundoff.
  const double eps = 1e-8;
  using state_t = std::array<double, 6>;
  state_t u;
  {
    const double norm = std::sqrt(1.0 + eps * eps);
    u[0] = out.point_I[0] / norm;
    u[1] = out.point_I[1] / norm;
    u[2] = eps / norm;
    const double psi0 = u[2] / (sys.gamma * u[1]);  // v0 = 1, q0 = 0
    u[3] = std::log(psi0);
    u[4] = 0.0;
    u[5] = psi0;  // psi' ~ 1 at the pole
  }

  auto rhs = [&sys](const state_t& x, state_t& dx, double) {
    const std::array<double, 3> p{x[0], x[1], x[2]};
    const auto dp = sys.rhs(p);
    dx[0] = dp[0];
    dx[1] = dp[1];
    dx[2] = dp[2];
    dx[3] = sys.beta * x[0];
    dx[4] = sys.inf ? (std::sqrt(sys.n - 1.0) * x[0] - 1.0)
                    : (1.0 - (sys.n - 1.0) * sys.beta * x[0]) * sys.invm1;
    dx[5] = sys.gamma * std::exp(x[3]) * x[1];
  };

  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled<ode::runge_kutta_cash_karp54<state_t>>(tol, tol);

  Trajectory& traj = out.trajectory;
  traj.state_names = {"X", "Y", "W"};
  traj.density_name = sys.inf ? "phi" : "v";
  traj.meta = {{"family", "bohm_bryant"}, {"n", n},   {"m", m.str()},
               {"mu", out.mu},            {"lambda", 0.0}, {"epsilon", eps}};

  const double stop_dist = 1e-6;
  const double dt_max = 0.02;
  double t = 0.0, dt = 1e-4;
  double kappa_prev = std::numeric_limits<double>::infinity();
  out.kappa_monotone_steps = 0;
  bool arrived = false;

  auto record = [&](double time, const state_t& x, double defect) {
    TrajectoryRow row;
    row.t = time;
    row.state = {x[0], x[1], x[2]};
    row.psi = std::exp(x[3]);
    row.density = sys.inf ? x[4] : std::exp(x[4]);
    row.r = x[5];
    row.kappa = lyapunov_kappa(n, m, {x[0], x[1], x[2]});
    row.sphere_defect = defect;

    // First-integral residual: with lambda = 0,
    //   m mu psi^2 / v^2 = 2 m (n-1) psi psi' v'/v + m(m-1) psi^2 (v'/v)^2
    //                      + (n-1)(n-2)((psi')^2 - 1)
    // and its m = inf limit with v'/v -> -phi'/m, m mu -> mu'.
    const double psi = row.psi;
    const double psi_p = (x[1] > 1e-300) ? sys.slope * x[0] / x[1] : 0.0;
    if (sys.inf) {
      const double phi_p = (std::sqrt(sys.n - 1.0) * x[0] - 1.0) /
                           (sys.gamma * psi * x[1]);
      row.integrability_residual =
          out.mu * psi * psi -
          (-2.0 * (n - 1.0) * psi * psi_p * phi_p + psi * psi * phi_p * phi_p +
           (n - 1.0) * (n - 2.0) * (psi_p * psi_p - 1.0));
    } else {
      const double lv = (1.0 - (sys.n - 1.0) * sys.beta * x[0]) * sys.invm1 /
                        (sys.gamma * psi * x[1]);  // v'/v
      const double vv = row.density;
      row.integrability_residual =
          sys.m * out.mu * psi * psi / (vv * vv) -
          (2.0 * sys.m * (n - 1.0) * psi * psi_p * lv +
           sys.m * (sys.m - 1.0) * psi * psi * lv * lv +
           (n - 1.0) * (n - 2.0) * (psi_p * psi_p - 1.0));
    }
    traj.rows.push_back(row);
  };

  record(0.0, u, 0.0);
  while (t < t_span) {
    double dt_try = std::min(dt, dt_max);
    state_t before = u;
    double t_before = t;
    ode::controlled_step_result res = stepper.try_step(rhs, u, t, dt_try);
    dt = dt_try;
    if (res != ode::success) {
      if (dt < 1e-14) throw SolverError("bohm_bryant_solve: step size collapsed");
      u = before;
      t = t_before;
      continue;
    }
    const double nrm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    const double defect = std::fabs(nrm - 1.0);
    u[0] /= nrm;
    u[1] /= nrm;
    u[2] /= nrm;
    record(t, u, defect);

    const double kappa = traj.rows.back().kappa;
    // Non-increasing count: near the sink the decrement drops below one ulp
    // and consecutive values can round to the same double.
    if (kappa <= kappa_prev) ++out.kappa_monotone_steps;
    kappa_prev = kappa;

    const double dx = u[0] - out.point_K[0], dy = u[1] - out.point_K[1],
                 dz = u[2] - out.point_K[2];
    if (std::sqrt(dx * dx + dy * dy + dz * dz) <= stop_dist) {
      arrived = true;
      break;
    }
  }
  if (!arrived)
    throw SolverError("bohm_bryant_solve: did not reach the sink K within t_span");

  // Materialize the reconstructed radial data.
  {
    std::vector<double> rg, psig, qg;
    rg.reserve(traj.rows.size());
    for (const auto& row : traj.rows) {
      if (!rg.empty() && !(row.r > rg.back())) continue;  // enforce monotone grid
      rg.push_back(row.r);
      psig.push_back(row.psi);
      qg.push_back(row.density);
    }
    RadialSmms s;
    s.n = n;
    s.m = m;
    s.r0 = rg.front();
    s.r1 = rg.back();
    s.psi = Profile::sampled(rg, psig, 5);
    if (sys.inf) {
      s.phi = Profile::sampled(rg, qg, 5);
      s.density_kind = DensityKind::Phi;
    } else {
      s.v = Profile::sampled(rg, qg, 5);
      s.density_kind = DensityKind::V;
    }
    s.pole_left = true;
    s.validate();
    out.smms = s;
  }
  return out;
}

BryantAsymptotics bryant_asymptotics_check(const Trajectory& traj, int n) {
  BryantAsymptotics out;
  if (traj.rows.size() < 32)
    throw std::invalid_argument("bryant_asymptotics_check: trajectory too short");
  // Tail window: the last quarter of rows (approach to the sink).
  const size_t start = traj.rows.size() - traj.rows.size() / 4;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double xy2 = 0, lin = 0;
  size_t cnt = 0;
  for (size_t i = start; i < traj.rows.size(); ++i) {
    const auto& row = traj.rows[i];
    const double lx = std::log(row.r), ly = std::log(row.psi * row.psi);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    const double X = row.state[0], Y = row.state[1];
    xy2 += X / (Y * Y);
    lin += row.psi * row.psi / row.r;
    ++cnt;
  }
  out.psi_sq_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  out.x_over_y2 = xy2 / cnt;
  out.linear_coeff = lin / cnt;
  (void)n;
  return out;
}

}  // namespace qesmms
