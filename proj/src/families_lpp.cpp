#include <boost/numeric/odeint.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qesmms/families.hpp"

namespace qesmms {

namespace {

// Parameters of the circle-bundle ansatz over a Kaehler-Einstein base:
// dimension n, base Einstein constant n, bundle integers 1 <= s < q.
struct LppParams {
  int n;
  bool inf;
  double m;        // finite density exponent; unused when inf
  double coef_tw;  // n^2 s^2 / (4 q^2): twist curvature coefficient
  double lambda;
  double mu;       // fixed normalization: mu = m - 1 (finite), mu' = 0 (inf)
};

using state_t = std::array<double, 6>;  // (f, f', h, h', w, w'), w = v or phi

// Second-derivative brackets f''/f and h''/h.  Written with grouped ratios
// (f' h')/(f h) etc. so the axis limit t -> 0 stays well conditioned.
struct Brackets {
  double fof;  // f''/f
  double hoh;  // h''/h
  double wpp;  // v'' (finite) or phi'' (inf)
};

Brackets brackets(const LppParams& P, const state_t& y) {
  const double f = y[0], fp = y[1], h = y[2], hp = y[3], w = y[4], wp = y[5];
  const double n = P.n;
  const double t1 = (fp * hp) / (f * h);
  const double tw = P.coef_tw * (f * f) / (h * h * h * h);
  Brackets b;
  if (P.inf) {
    b.fof = -P.lambda - (n - 2.0) * t1 + (n - 2.0) * tw + (fp * wp) / f;
    b.hoh = -P.lambda - t1 - (n - 3.0) * (hp / h) * (hp / h) + n / (h * h) -
            2.0 * tw + (hp * wp) / h;
    b.wpp = P.lambda + b.fof + (n - 2.0) * b.hoh;
  } else {
    b.fof = -P.lambda - (n - 2.0) * t1 + (n - 2.0) * tw -
            P.m * (fp * wp) / (f * w);
    b.hoh = -P.lambda - t1 - (n - 3.0) * (hp / h) * (hp / h) + n / (h * h) -
            2.0 * tw - P.m * (hp * wp) / (h * w);
    b.wpp = (w / P.m) * (-P.lambda - b.fof - (n - 2.0) * b.hoh);
  }
  return b;
}

void rhs(const LppParams& P, const state_t& y, state_t& dy) {
  const Brackets b = brackets(P, y);
  dy[0] = y[1];
  dy[1] = y[0] * b.fof;
  dy[2] = y[3];
  dy[3] = y[2] * b.hoh;
  dy[4] = y[5];
  dy[5] = b.wpp;
}

// Conserved quantity along solutions: the characteristic-constant identity.
// Finite m:  mu = lambda v^2 + v v'' + v (f'/f) v' + (n-2) v (h'/h) v'
//                 + (m-1) v'^2.
// m = inf:   -mu' + n lambda = 2 lambda phi + phi'' + (f'/f) phi'
//                 + (n-2)(h'/h) phi' - phi'^2.
// Relative residual of the radial first integral.  Individual terms grow
// like 1/f near the closing section while their sum stays bounded, so the
// raw difference would amplify state roundoff there; normalizing by the
// term magnitudes keeps the residual at integrator-tolerance scale along
// the whole trajectory.
double first_integral_residual(const LppParams& P, const state_t& y) {
  const Brackets b = brackets(P, y);
  const double f = y[0], fp = y[1], h = y[2], hp = y[3], w = y[4], wp = y[5];
  const double n = P.n;
  double terms[5], target;
  if (P.inf) {
    terms[0] = 2.0 * P.lambda * w;
    terms[1] = b.wpp;
    terms[2] = (fp / f) * wp;
    terms[3] = (n - 2.0) * (hp / h) * wp;
    terms[4] = -wp * wp;
    target = n * P.lambda - P.mu;
  } else {
    terms[0] = P.lambda * w * w;
    terms[1] = w * b.wpp;
    terms[2] = w * (fp / f) * wp;
    terms[3] = (n - 2.0) * w * (hp / h) * wp;
    terms[4] = (P.m - 1.0) * wp * wp;
    target = P.mu;
  }
  double mon = 0.0, scale = 1.0 + std::fabs(target);
  for (double t : terms) {
    mon += t;
    scale = std::max(scale, std::fabs(t));
  }
  return (mon - target) / scale;
}

// Series seed at the axis: f = t + f3 t^3, h = h0 + h2 t^2, w = w0 + w2 t^2.
state_t series_seed(const LppParams& P, double h0, double w0, double t0) {
  const double n = P.n;
  const double h2 = (n / (h0 * h0) - P.lambda) * h0 / 4.0;
  double w2, f3;
  if (P.inf) {
    w2 = P.lambda * (n - 2.0 * w0) / 4.0;  // mu' = 0
    f3 = (-P.lambda - 2.0 * (n - 2.0) * h2 / h0 + 2.0 * w2) / 6.0;
  } else {
    w2 = (P.mu - P.lambda * w0 * w0) / (4.0 * w0);
    f3 = (-P.lambda - 2.0 * (n - 2.0) * h2 / h0 - 2.0 * P.m * w2 / w0) / 6.0;
  }
  return {t0 + f3 * t0 * t0 * t0, 1.0 + 3.0 * f3 * t0 * t0,
          h0 + h2 * t0 * t0,      2.0 * h2 * t0,
          w0 + w2 * t0 * t0,      2.0 * w2 * t0};
}

struct ShotResult {
  bool ok = false;
  double l = 0.0;
  std::array<double, 3> resid{0.0, 0.0, 0.0};
  state_t end_state{};
  double max_drift = 0.0;
};

// Integrate one shot from the axis until the first zero of f.  When
// `samples` is non-null, fill it with dense-output states at those times
// (times must be increasing and exceed t0).
ShotResult shoot(const LppParams& P, double h0, double w0, double tol,
                 const std::vector<double>* sample_times = nullptr,
                 std::vector<state_t>* samples = nullptr) {
  namespace ode = boost::numeric::odeint;
  ShotResult out;
  const double t0 = 1e-5;
  state_t y = series_seed(P, h0, w0, t0);
  auto sys = [&P](const state_t& x, state_t& dx, double) { rhs(P, x, dx); };

  // `tol` is the end-to-end accuracy the shot advertises; per-step error
  // control runs three decades tighter so that accumulated global error
  // (measured by the first-integral drift) stays within that budget.
  const double step_tol = std::max(tol * 1e-3, 1e-13);
  auto stepper =
      ode::make_dense_output(step_tol, step_tol,
                             ode::runge_kutta_dopri5<state_t>());
  stepper.initialize(y, t0, 1e-4);

  const double t_cap = 40.0;
  size_t next_sample = 0;
  for (size_t step = 0; step < 200000; ++step) {
    stepper.do_step(sys);
    const double t_cur = stepper.current_time();
    const state_t& yc = stepper.current_state();
    if (!(std::isfinite(yc[0]) && std::isfinite(yc[2]) && std::isfinite(yc[4])))
      return out;
    if (yc[2] < 0.02 || yc[2] > 200.0 || std::fabs(yc[0]) > 100.0) return out;
    if (!P.inf && yc[4] < 1e-6) return out;

    if (samples != nullptr) {
      while (next_sample < sample_times->size() &&
             (*sample_times)[next_sample] <= t_cur) {
        state_t ys;
        stepper.calc_state((*sample_times)[next_sample], ys);
        samples->push_back(ys);
        ++next_sample;
      }
    }
    out.max_drift = std::max(out.max_drift,
                             std::fabs(first_integral_residual(P, yc)));

    // The f = 0 section is a regular singular point of the flow: the error
    // controller would otherwise shrink steps geometrically and never
    // cross.  Stop just above the section and finish with a Taylor step,
    // which is regular whenever the trajectory is near a closing solution.
    const bool stalled = (yc[0] <= 1e-4 && yc[1] <= -0.05) ||
                         (yc[0] <= 1e-7 && yc[1] < 0.0);
    if (stalled || yc[0] <= 0.0) {
      if (yc[1] >= -1e-6) return out;
      state_t dy;
      rhs(P, yc, dy);
      double delta = -yc[0] / yc[1];
      if (!std::isfinite(delta) || std::fabs(delta) > 0.05) return out;
      for (int it = 0; it < 3; ++it) {
        const double slope = yc[1] + dy[1] * delta;
        if (slope >= -1e-3) break;
        delta -= (yc[0] + yc[1] * delta + 0.5 * dy[1] * delta * delta) / slope;
      }
      out.l = t_cur + delta;
      state_t ye;
      ye[0] = 0.0;
      ye[1] = yc[1] + dy[1] * delta;
      ye[2] = yc[2] + yc[3] * delta + 0.5 * dy[3] * delta * delta;
      ye[3] = yc[3] + dy[3] * delta;
      ye[4] = yc[4] + yc[5] * delta + 0.5 * dy[5] * delta * delta;
      ye[5] = yc[5] + dy[5] * delta;
      out.end_state = ye;
      // h' and w' carry a 1/(l - t) mode off a closing solution, so their
      // values at the section depend on where the stopper lands.  The mode
      // coefficients h'(t) (l - t) and w'(t) (l - t) are the
      // protocol-independent obstructions: they vanish exactly on closing
      // solutions and stay smooth in the shooting parameters.  f'
      // extrapolates regularly.
      out.resid = {ye[1] + 1.0, yc[3] * delta, yc[5] * delta};
      out.ok = true;
      return out;
    }
    if (t_cur > t_cap) return out;
  }
  return out;
}

double resid_norm(const std::array<double, 3>& r) {
  return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
}

// Damped Newton on (h0, w0) for the closure residuals (f'(l)+1, h'(l)) at
// fixed lambda.  The density-slope residual w'(l) vanishes automatically on
// any closing trajectory (the slope decays linearly toward the section), so
// the square two-parameter system carries all the matching information.
bool refine_root(const LppParams& P0, double& h0, double& w0, ShotResult& cur,
                 double tol) {
  LppParams P = P0;
  cur = shoot(P, h0, w0, tol);
  if (!cur.ok) return false;
  // Far from the root the closure map is strongly curved and progress is
  // linear under damped steps; the budget covers that phase plus the
  // quadratic endgame.
  for (int iter = 0; iter < 200; ++iter) {
    const double r1 = cur.resid[0], r2 = cur.resid[1];
    const double fn = std::max(std::fabs(r1), std::fabs(r2));
    if (fn <= 1e-11) return true;
    // The section residual carries jitter from the integrator's discrete
    // step grid; a wide difference step keeps the secant slope above that
    // noise (the map is mildly curved, so the wide secant stays accurate).
    const double d1 = 1e-4 * std::max(1.0, std::fabs(h0));
    const double d2 = 1e-4 * std::max(1.0, std::fabs(w0));
    ShotResult ra = shoot(P, h0 + d1, w0, tol);
    ShotResult rb = shoot(P, h0, w0 + d2, tol);
    if (!ra.ok || !rb.ok) return false;
    const double J11 = (ra.resid[0] - r1) / d1, J12 = (rb.resid[0] - r1) / d2;
    const double J21 = (ra.resid[1] - r2) / d1, J22 = (rb.resid[1] - r2) / d2;
    const double det = J11 * J22 - J12 * J21;
    if (!(std::fabs(det) > 1e-300)) return false;
    const double dh = (-r1 * J22 + r2 * J12) / det;
    const double dw = (-J11 * r2 + J21 * r1) / det;
    double alpha = 1.0;
    bool moved = false;
    for (int half = 0; half < 16; ++half) {
      const double hn = h0 + alpha * dh, wn = w0 + alpha * dw;
      if (hn > 0.05 && (P.inf || wn > 0.05)) {
        ShotResult rn = shoot(P, hn, wn, tol);
        if (rn.ok &&
            std::max(std::fabs(rn.resid[0]), std::fabs(rn.resid[1])) < fn) {
          h0 = hn;
          w0 = wn;
          cur = rn;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) return fn <= 1e-9;
  }
  return std::max(std::fabs(cur.resid[0]), std::fabs(cur.resid[1])) <= 1e-9;
}

// The constant-density (Einstein) branch closes for every lambda and shows
// up as a root with flat density; the family of interest has the density
// genuinely varying between the two collapsing sections.
bool is_constant_density_root(double w0, const ShotResult& r) {
  return std::fabs(r.end_state[4] - w0) <= 1e-5 * std::max(1.0, std::fabs(w0));
}

// Multistart search at fixed lambda: Newton from every local minimum of the
// closure norm over a seed grid, keeping the varying-density root.  When two
// mirror roots exist (the same geometry shot from either collapsing end),
// the larger-h0 end is the deterministic pick.
bool multistart_root(const LppParams& P0, double& h0, double& w0,
                     ShotResult& cur) {
  LppParams P = P0;
  const int NH = 41, NW = 41;
  std::vector<double> fn(NH * NW, std::numeric_limits<double>::infinity());
  std::vector<std::array<double, 2>> pt(NH * NW);
  const double wscale = P.inf ? 1.0 : std::sqrt(std::max(1.0, P.m - 1.0));
  for (int ih = 0; ih < NH; ++ih) {
    const double h = 0.3 * std::pow(5.0 / 0.3, double(ih) / (NH - 1));
    for (int iw = 0; iw < NW; ++iw) {
      const double w =
          P.inf ? (0.5 * P.n - 4.0 + 8.0 * double(iw) / (NW - 1))
                : wscale * 0.2 * std::pow(20.0, double(iw) / (NW - 1));
      pt[ih * NW + iw] = {h, w};
      ShotResult r = shoot(P, h, w, 1e-6);
      if (r.ok)
        fn[ih * NW + iw] =
            std::max(std::fabs(r.resid[0]), std::fabs(r.resid[1]));
    }
  }
  struct Cand {
    double fn, h, w;
  };
  std::vector<Cand> cands;
  for (int ih = 0; ih < NH; ++ih)
    for (int iw = 0; iw < NW; ++iw) {
      const double f0 = fn[ih * NW + iw];
      if (!std::isfinite(f0)) continue;
      bool ismin = true;
      for (int dh = -1; dh <= 1 && ismin; ++dh)
        for (int dw = -1; dw <= 1; ++dw) {
          const int jh = ih + dh, jw = iw + dw;
          if (jh < 0 || jh >= NH || jw < 0 || jw >= NW) continue;
          if (fn[jh * NW + jw] < f0) {
            ismin = false;
            break;
          }
        }
      if (ismin) cands.push_back({f0, pt[ih * NW + iw][0], pt[ih * NW + iw][1]});
    }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.fn < b.fn; });
  bool have = false;
  int tried = 0;
  for (const Cand& c : cands) {
    if (tried >= 24) break;
    ++tried;
    double h = c.h, w = c.w;
    ShotResult r;
    if (!refine_root(P, h, w, r, 1e-9)) continue;
    if (is_constant_density_root(w, r)) continue;
    if (!have || h > h0) {
      h0 = h;
      w0 = w;
      cur = r;
      have = true;
    }
  }
  return have;
}

}  // namespace

LppCurvature lpp_curvature(const MultiProfileSmms& mp, double t) {
  const int n = mp.n;
  const Jet3 f = mp.f.jet(t), h = mp.h.jet(t);
  const double coef_tw =
      double(n) * n * mp.s * mp.s / (4.0 * double(mp.q) * mp.q);
  const double tw = coef_tw * f.f * f.f / (h.f * h.f * h.f * h.f);
  LppCurvature c;
  c.plain_t = -f.d2 / f.f - (n - 2.0) * h.d2 / h.f;
  c.plain_fiber =
      -f.d2 / f.f - (n - 2.0) * f.d1 * h.d1 / (f.f * h.f) + (n - 2.0) * tw;
  c.plain_base = -h.d2 / h.f - f.d1 * h.d1 / (f.f * h.f) -
                 (n - 3.0) * (h.d1 / h.f) * (h.d1 / h.f) + n / (h.f * h.f) -
                 2.0 * tw;
  c.scalar_plain = c.plain_t + c.plain_fiber + (n - 2.0) * c.plain_base;
  if (mp.m.infinite()) {
    const Jet3 phi = mp.phi.jet(t);
    c.ric_t = c.plain_t + phi.d2;
    c.ric_fiber = c.plain_fiber + f.d1 * phi.d1 / f.f;
    c.ric_base = c.plain_base + h.d1 * phi.d1 / h.f;
  } else {
    const double m = mp.m.value;
    const Jet3 v = mp.v.jet(t);
    c.ric_t = c.plain_t - m * v.d2 / v.f;
    c.ric_fiber = c.plain_fiber - m * f.d1 * v.d1 / (f.f * v.f);
    c.ric_base = c.plain_base - m * h.d1 * v.d1 / (h.f * v.f);
  }
  return c;
}

LppSolution lpp_solve(int n, const DimParam& m, int s, int q, double tol) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("lpp_solve: total dimension must be even and >= 4");
  if (s < 1 || s >= q) throw std::invalid_argument("lpp_solve: need 1 <= s < q");
  if (m.kind == DimParam::Kind::NegInf)
    throw std::invalid_argument("lpp_solve: family lives on m in (1, +inf]");
  LppParams P;
  P.n = n;
  P.inf = m.infinite();
  P.m = P.inf ? 0.0 : m.value;
  if (!P.inf && !(P.m > 1.0))
    throw std::invalid_argument("lpp_solve: finite m must exceed 1");
  P.coef_tw = double(n) * n * s * s / (4.0 * double(q) * q);
  P.mu = P.inf ? 0.0 : P.m - 1.0;

  // Scale gauge: a metric homothety together with a density rescaling
  // brings any solution of this family to lambda = 1 with the first-integral
  // normalization above, so lambda is fixed rather than shot for.
  P.lambda = 1.0;

  // The varying-density root has its widest basin near m = 2; anchor the
  // multistart there and continue in m toward the requested exponent,
  // rescaling the density seed with sqrt(m - 1) along the way.
  double h0 = 0.0, w0 = 0.0;
  ShotResult cur;
  bool have = false;
  if (P.inf || P.m == 2.0) {
    have = multistart_root(P, h0, w0, cur);
  } else {
    LppParams PA = P;
    PA.m = 2.0;
    PA.mu = 1.0;
    have = multistart_root(PA, h0, w0, cur);
    double mc = 2.0;
    while (have && mc != P.m) {
      const double mn = (P.m > mc) ? std::min(P.m, 1.0 + (mc - 1.0) * 1.6)
                                   : std::max(P.m, 1.0 + (mc - 1.0) / 1.6);
      LppParams PC = P;
      PC.m = mn;
      PC.mu = mn - 1.0;
      w0 *= std::sqrt((mn - 1.0) / (mc - 1.0));
      have = refine_root(PC, h0, w0, cur, 1e-9);
      mc = mn;
    }
  }
  if (!have)
    throw SolverError(
        "lpp_solve: no closing solution with varying density found");

  // Final dense pass: uniform samples for profiles and monitors.
  const double l = cur.l;
  const int n_samp = 1400;
  std::vector<double> ts;
  ts.reserve(n_samp);
  for (int j = 1; j <= n_samp; ++j) {
    const double tj = l * double(j) / n_samp;
    if (tj < l) ts.push_back(tj);
  }
  std::vector<state_t> ys;
  ShotResult fin = shoot(P, h0, w0, tol, &ts, &ys);
  if (!fin.ok || ys.size() + 8 < ts.size())
    throw SolverError("lpp_solve: final sampling pass failed");
  ts.resize(ys.size());
  ts.push_back(fin.l);
  ys.push_back(fin.end_state);

  LppSolution out;
  out.closure_error = resid_norm(fin.resid);
  out.max_integrability = fin.max_drift;

  MultiProfileSmms mp;
  mp.n = n;
  mp.m = m;
  mp.s = s;
  mp.q = q;
  mp.base_const = n;
  mp.l = fin.l;
  mp.lambda = P.lambda;
  mp.mu = P.mu;
  {
    std::vector<double> tg, fg, hg, wg;
    tg.push_back(0.0);
    fg.push_back(0.0);
    hg.push_back(h0);
    wg.push_back(w0);
    for (size_t i = 0; i < ys.size(); ++i) {
      tg.push_back(ts[i]);
      fg.push_back(ys[i][0]);
      hg.push_back(ys[i][2]);
      wg.push_back(ys[i][4]);
    }
    mp.f = Profile::sampled(tg, fg, 7);
    mp.h = Profile::sampled(tg, hg, 7);
    if (P.inf)
      mp.phi = Profile::sampled(tg, wg, 7);
    else
      mp.v = Profile::sampled(tg, wg, 7);
  }

  Trajectory& traj = out.trajectory;
  traj.state_names = {"f", "f_prime", "h", "h_prime",
                      P.inf ? "phi" : "v", P.inf ? "phi_prime" : "v_prime"};
  traj.density_name = P.inf ? "phi" : "v";
  traj.meta = {{"family", "lpp"},        {"n", n},
               {"s", s},                 {"q", q},
               {"m", m.str()},           {"lambda", mp.lambda},
               {"mu", mp.mu},            {"l", mp.l}};
  double min_gap = std::numeric_limits<double>::infinity();
  const double bound =
      P.inf ? 0.0 : double(n) * (n - 1.0) * mp.lambda / (P.m + n - 1.0);
  for (size_t i = 0; i < ys.size(); ++i) {
    const state_t& y = ys[i];
    const Brackets b = brackets(P, y);
    TrajectoryRow row;
    row.t = ts[i];
    row.state = {y[0], y[1], y[2], y[3], y[4], y[5]};
    row.r = ts[i];
    row.psi = y[0];
    row.density = y[4];
    row.kappa = 0.0;
    row.sphere_defect = 0.0;
    row.integrability_residual = first_integral_residual(P, y);
    traj.rows.push_back(row);

    if (ts[i] >= 0.02 * mp.l && ts[i] <= 0.98 * mp.l) {
      const double nn = n;
      const double tw = P.coef_tw * y[0] * y[0] / std::pow(y[2], 4.0);
      const double t1 = (y[1] * y[3]) / (y[0] * y[2]);
      // Plain parts use the actual second derivatives f''/f, h''/h, which
      // the weighted brackets already are.
      const double pl_t = -b.fof - (nn - 2.0) * b.hoh;
      const double pl_fib = -b.fof - (nn - 2.0) * t1 + (nn - 2.0) * tw;
      const double pl_base = -b.hoh - t1 -
                             (nn - 3.0) * (y[3] / y[2]) * (y[3] / y[2]) +
                             nn / (y[2] * y[2]) - 2.0 * tw;
      const double scal = pl_t + pl_fib + (nn - 2.0) * pl_base;
      min_gap = std::min(min_gap, scal - bound);
    }
  }
  out.min_scalar_gap = min_gap;
  out.model = mp;
  return out;
}

}  // namespace qesmms
