#include <boost/numeric/odeint.hpp>

#include <cmath>

#include "qesmms/families.hpp"

namespace qesmms {

namespace {

// 1 - v^{1-m} evaluated without cancellation near v = 1.
double one_minus_pow(double v, double m) { return -std::expm1((1.0 - m) * std::log(v)); }

struct CigarCore {
  double m;
  double t_series;          // series zone half-width
  Profile v_table;          // sampled v(t) outside the series zone
  double table_start = 0.0;

  double value_v(double t) const {
    const double at = std::fabs(t);
    if (at < t_series) {
      const double t2 = at * at;
      return 1.0 + t2 / (m - 1.0) - m * t2 * t2 / (6.0 * (m - 1.0) * (m - 1.0));
    }
    return v_table(at);
  }

  Jet3 jet_v(double t) const {
    const double v = value_v(t);
    const double psi = std::sqrt(one_minus_pow(v, m));
    const double d1 = 2.0 * psi / (m - 1.0);
    const double vm = std::pow(v, -m);
    const double d2 = 2.0 * vm / (m - 1.0);
    const double d3 = -2.0 * m * (vm / v) * d1 / (m - 1.0);
    return {v, d1, d2, d3};
  }

  Jet3 jet_psi(double t) const {
    const double v = value_v(t);
    double psi;
    if (std::fabs(t) < t_series) {
      // psi^2 = t^2 (1 - 2m t^2 / (3(m-1)) + ...), exact at the pole.
      psi = t * std::sqrt(1.0 - 2.0 * m * t * t / (3.0 * (m - 1.0)));
    } else {
      psi = std::sqrt(one_minus_pow(v, m));
    }
    const double vm = std::pow(v, -m);
    const double vp = 2.0 * std::sqrt(one_minus_pow(v, m)) / (m - 1.0);
    const double vpp = 2.0 * vm / (m - 1.0);
    const double d1 = vm;
    const double d2 = -m * (vm / v) * vp;
    const double d3 = m * (m + 1.0) * (vm / (v * v)) * vp * vp - m * (vm / v) * vpp;
    return {psi, d1, d2, d3};
  }
};

}  // namespace

CigarSolution cigar_solve(const DimParam& m, double t_max, double tol) {
  if (!(t_max > 0.0)) throw std::invalid_argument("cigar_solve: t_max must be positive");
  if (m.kind == DimParam::Kind::NegInf)
    throw std::invalid_argument("cigar_solve: family lives on m in (1, +inf]");

  CigarSolution out;
  RadialSmms s;
  s.n = 2;
  s.m = m;
  s.r0 = 0.0;
  s.r1 = t_max;
  s.pole_left = true;

  if (m.infinite()) {
    // Closed form: psi = tanh t, phi = -2 log cosh t.
    s.psi = Profile::product(
        {Profile::sinh(1.0, 1.0), Profile::power(Profile::cosh(1.0, 1.0), -1.0)});
    s.phi = Profile::product({Profile::constant(-2.0), Profile::log(Profile::cosh(1.0, 1.0))});
    s.density_kind = DensityKind::Phi;
    out.mu = 4.0;  // mu' at m = inf
  } else {
    const double mv = m.value;
    if (!(mv > 1.0)) throw std::invalid_argument("cigar_solve: finite m must exceed 1");

    auto core = std::make_shared<CigarCore>();
    core->m = mv;
    core->t_series = 1e-3 * std::sqrt(mv - 1.0);

    // March v' = 2 sqrt(1 - v^{1-m}) / (m-1) from the series seed.
    const double t0 = std::min(core->t_series, 0.5 * t_max);
    double v0 = 1.0 + t0 * t0 / (mv - 1.0) - mv * std::pow(t0, 4) / (6.0 * (mv - 1.0) * (mv - 1.0));
    std::vector<double> ts{0.0}, vs{1.0};
    // Seed the table with series values so interpolation windows near the
    // zone boundary see consistent data.
    for (double tt = t0 / 4.0; tt < t0 * 0.999; tt += t0 / 4.0) {
      ts.push_back(tt);
      vs.push_back(1.0 + tt * tt / (mv - 1.0) -
                   mv * std::pow(tt, 4) / (6.0 * (mv - 1.0) * (mv - 1.0)));
    }

    namespace ode = boost::numeric::odeint;
    using state = std::array<double, 1>;
    auto rhs = [mv](const state& x, state& dx, double) {
      dx[0] = 2.0 * std::sqrt(std::max(0.0, one_minus_pow(x[0], mv))) / (mv - 1.0);
    };
    state x{v0};
    auto stepper = ode::make_controlled<ode::runge_kutta_cash_karp54<state>>(tol, tol);
    double t = t0;
    double dt = std::min(1e-3, t_max / 1000.0);
    ts.push_back(t);
    vs.push_back(x[0]);
    while (t < t_max + 0.05 * t_max + 1e-9) {
      ode::controlled_step_result res = stepper.try_step(rhs, x, t, dt);
      if (res == ode::success) {
        ts.push_back(t);
        vs.push_back(x[0]);
        dt = std::min(dt, t_max / 200.0);  // keep the table dense
      }
      if (dt < 1e-14) throw SolverError("cigar_solve: step size collapsed");
    }
    core->v_table = Profile::sampled(ts, vs, 7);
    core->table_start = t0;

    s.psi = Profile::custom([core](double t) { return core->jet_psi(t); }, 0.0, t_max);
    s.v = Profile::custom([core](double t) { return core->jet_v(t); }, 0.0, t_max);
    s.density_kind = DensityKind::V;
    out.mu = 4.0 / (mv - 1.0);
  }

  s.validate();
  out.smms = s;

  // Trajectory: uniform rows; the first-integral residual is the distance
  // of the Bakry-Emery Ricci eigenvalues from the steady value 0.
  Trajectory& traj = out.trajectory;
  traj.state_names = {"v"};
  traj.density_name = m.infinite() ? "phi" : "v";
  traj.meta = {{"family", "cigar"},
               {"m", m.str()},
               {"mu", out.mu},
               {"lambda", 0.0},
               {"t_max", t_max}};
  const int rows = 2001;
  for (int i = 1; i < rows; ++i) {  // skip the pole row: curvature is 0/0 there
    const double t = t_max * i / (rows - 1);
    TrajectoryRow row;
    row.t = t;
    row.r = t;
    row.psi = s.psi(t);
    row.density = m.infinite() ? s.phi(t) : s.v(t);
    row.state = {row.density};
    row.kappa = 0.0;
    row.sphere_defect = 0.0;
    const auto [rr, tan] = bakry_emery_ricci(s, t);
    row.integrability_residual = std::max(std::fabs(rr), std::fabs(tan));
    traj.rows.push_back(row);
  }
  return out;
}

}  // namespace qesmms
