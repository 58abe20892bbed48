#include "qesmms/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qesmms/curvature.hpp"

namespace qesmms {

namespace {

// 5-point Gauss-Legendre on [a, b]; exactness degree 9 keeps the cumulative
// arclength integral far below resampling error.
double gauss5(const std::function<double(double)>& f, double a, double b) {
  static const double xs[5] = {-0.9061798459386639, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386639};
  static const double ws[5] = {0.23692688505618908, 0.47862867049936647,
                               0.5688888888888889, 0.47862867049936647,
                               0.23692688505618908};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += ws[i] * f(mid + half * xs[i]);
  return s * half;
}

}  // namespace

ConformalDatum ConformalDatum::from_factor(RadialSmms base, Profile u) {
  if (base.m.infinite())
    throw std::invalid_argument("conformal factor form requires finite m; use from_measure_shift");
  ConformalDatum c;
  const double coeff = base.m.value + base.n - 2.0;
  c.base = std::move(base);
  c.u = std::move(u);
  c.f = Profile::product({Profile::constant(coeff), Profile::log(c.u)});
  return c;
}

ConformalDatum ConformalDatum::from_measure_shift(RadialSmms base, Profile f) {
  if (base.m.finite())
    throw std::invalid_argument("measure shift form is the |m| = inf degeneration");
  ConformalDatum c;
  c.base = std::move(base);
  c.f = std::move(f);
  return c;
}

TransformedCurvature transformed_curvature(const ConformalDatum& c, double r) {
  const RadialSmms& s = c.base;
  const CurvatureData cd = curvature_data(s, r);
  const int n = s.n;
  TransformedCurvature out;

  if (s.m.infinite()) {
    const Jet3 fj = c.f.jet(r);
    double A = 0.0;
    if (n >= 2) {
      const Jet3 ps = s.psi.jet(r);
      A = ps.d1 / ps.f;
    }
    const double lap_phi_f = fj.d2 + (n - 1) * A * fj.d1 - cd.phi1 * fj.d1;
    out.ric_rr = cd.ric_rr + fj.d2;
    out.ric_tan = (n >= 2) ? cd.ric_tan + A * fj.d1 : 0.0;
    out.scalar = cd.scalar + 2.0 * lap_phi_f - fj.d1 * fj.d1;
    return out;
  }

  const double m = s.m.value;
  const double M = m + n;  // synthetic total dimension
  const Jet3 uj = c.u.jet(r);
  if (!(uj.f > 0.0)) throw std::domain_error("conformal factor u must stay positive");
  double A = 0.0;
  if (n >= 2) {
    const Jet3 ps = s.psi.jet(r);
    A = ps.d1 / ps.f;
  }
  const double lap_phi_u = uj.d2 + (n - 1) * A * uj.d1 - cd.phi1 * uj.d1;
  const double gu2 = uj.d1 * uj.d1 / (uj.f * uj.f);
  const double q = lap_phi_u / uj.f - (M - 1.0) * gu2;
  out.ric_rr = cd.ric_rr + (M - 2.0) * uj.d2 / uj.f + q;
  out.ric_tan = (n >= 2) ? cd.ric_tan + (M - 2.0) * A * uj.d1 / uj.f + q : 0.0;
  out.scalar = cd.scalar + 2.0 * (M - 1.0) * lap_phi_u / uj.f - M * (M - 1.0) * gu2;
  return out;
}

ConformalTransformResult conformal_transform_detailed(const ConformalDatum& c,
                                                      int samples, int order) {
  const RadialSmms& s = c.base;
  ConformalTransformResult out;

  if (s.m.infinite()) {
    // Metric unchanged; the measure shift composes exactly.
    out.smms = s;
    out.smms.phi = s.phi + c.f;
    out.smms.density_kind = DensityKind::Phi;
    out.r_nodes = s.interior_grid(samples, 0.0);
    out.rhat_nodes = out.r_nodes;
    return out;
  }

  if (samples < order + 2) throw std::invalid_argument("conformal_transform: too few samples");
  const double len = s.r1 - s.r0;
  out.r_nodes.resize(samples);
  out.rhat_nodes.resize(samples);
  std::vector<double> psi_hat(samples), v_hat(samples);
  auto inv_u = [&c](double r) { return 1.0 / c.u(r); };
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = s.r0 + len * i / (samples - 1);
    if (i > 0) acc += gauss5(inv_u, out.r_nodes[i - 1], r);
    out.r_nodes[i] = r;
    out.rhat_nodes[i] = acc;
    const double u = c.u(r);
    if (s.n >= 2) psi_hat[i] = s.psi(r) / u;
    v_hat[i] = (s.m.value != 0.0) ? s.v(r) / u : 1.0;
  }

  RadialSmms t;
  t.n = s.n;
  t.m = s.m;
  t.r0 = 0.0;
  t.r1 = out.rhat_nodes.back();
  if (s.n >= 2) t.psi = Profile::sampled(out.rhat_nodes, psi_hat, order);
  t.v = Profile::sampled(out.rhat_nodes, v_hat, order);
  t.density_kind = DensityKind::V;
  t.pole_left = s.pole_left;
  t.pole_right = s.pole_right;
  t.validate();
  out.smms = t;
  return out;
}

RadialSmms conformal_transform(const ConformalDatum& c, int samples, int order) {
  return conformal_transform_detailed(c, samples, order).smms;
}

ScaleTuple duality_map(const ScaleTuple& t) {
  if (!t.m.finite())
    throw std::invalid_argument("duality_map: defined for finite m only");
  ScaleTuple d;
  d.n = t.n;
  d.u = t.v;
  d.v = t.u;
  d.lambda = t.mu;
  d.mu = t.lambda;
  d.m = DimParam((2.0 - t.n) - t.m.value);
  return d;
}

nlohmann::json scale_tuple_to_json(const ScaleTuple& t) {
  return {{"n", t.n},          {"u", t.u.spec()},  {"v", t.v.spec()},
          {"lambda", t.lambda}, {"mu", t.mu},       {"m", dimparam_to_json(t.m)}};
}

ScaleTuple scale_tuple_from_json(const nlohmann::json& j) {
  ScaleTuple t;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("scale tuple: integer 'n' required");
  t.n = j["n"].get<int>();
  t.u = Profile::from_spec(j.at("u"));
  t.v = Profile::from_spec(j.at("v"));
  t.lambda = j.at("lambda").get<double>();
  t.mu = j.at("mu").get<double>();
  t.m = dimparam_from_json(j.at("m"));
  return t;
}

namespace {

// Radial geometry inputs common to the system residuals.
struct ScalePoint {
  int n;
  double R;        // plain scalar curvature
  double ric_rr;   // plain Ricci eigenvalues
  double ric_tan;
  double A;        // psi'/psi (0 at n = 1)
};

ScalePoint scale_point(const RadialSmms& base, double r) {
  ScalePoint p;
  p.n = base.n;
  if (base.n >= 2) {
    const Jet3 ps = base.psi.jet(r);
    p.A = ps.d1 / ps.f;
    const double C = ps.d2 / ps.f;
    const double B2 = (ps.d1 * ps.d1 - 1.0) / (ps.f * ps.f);
    p.ric_rr = -(base.n - 1) * C;
    p.ric_tan = -C - (base.n - 2) * B2;
    p.R = -2.0 * (base.n - 1) * C - (base.n - 1) * (base.n - 2) * B2;
  } else {
    p.A = 0.0;
    p.ric_rr = p.ric_tan = p.R = 0.0;
  }
  return p;
}

// Tracefree second-order residual: rr minus tangential component of
//   u v Ric + (m+n-2) v Hess(u) - m u Hess(v).
double residual_tracefree(const ScalePoint& p, const Jet3& u, const Jet3& v, double m) {
  const double arr = u.f * v.f * p.ric_rr + (m + p.n - 2.0) * v.f * u.d2 -
                     m * u.f * v.d2;
  const double atan = u.f * v.f * p.ric_tan +
                      (m + p.n - 2.0) * v.f * p.A * u.d1 - m * u.f * p.A * v.d1;
  return arr - atan;
}

// Trace residual:  (uv)^2 R + (m+2n-2) u v^2 lap(u) - m u^2 v lap(v)
//                  - (m+n-1) n v^2 |grad u|^2 + m n u v <grad u, grad v>
//                  - n lambda v^2.
double residual_trace(const ScalePoint& p, const Jet3& u, const Jet3& v, double m,
                      double lambda) {
  const int n = p.n;
  const double lap_u = u.d2 + (n - 1) * p.A * u.d1;
  const double lap_v = v.d2 + (n - 1) * p.A * v.d1;
  return (u.f * v.f) * (u.f * v.f) * p.R + (m + 2.0 * n - 2.0) * u.f * v.f * v.f * lap_u -
         m * u.f * u.f * v.f * lap_v - (m + n - 1.0) * n * v.f * v.f * u.d1 * u.d1 +
         m * n * u.f * v.f * u.d1 * v.d1 - n * lambda * v.f * v.f;
}

}  // namespace

std::array<double, 3> scale_system_residuals(const RadialSmms& base, const Profile& u,
                                             double lambda, double mu, double r) {
  if (!base.m.finite())
    throw std::invalid_argument("scale_system_residuals: finite m required");
  const double m = base.m.value;
  if (m == 0.0) throw std::invalid_argument("scale_system_residuals: m = 0 has no density to couple");
  const ScalePoint p = scale_point(base, r);
  const Jet3 uj = u.jet(r);
  const Jet3 vj = base.v.jet(r);
  const double mdual = (2.0 - base.n) - m;
  return {residual_tracefree(p, uj, vj, m),
          residual_trace(p, uj, vj, m, lambda),
          // mu-residual == lambda-residual of the swapped data; this makes
          // duality invariance exact in floating point.
          residual_trace(p, vj, uj, mdual, mu)};
}

FourEquivalencesReport four_equivalences_check(const RadialSmms& base, const Profile& u,
                                               double lambda, double mu,
                                               int grid_points) {
  if (!base.m.finite() || base.m.value == 0.0)
    throw std::invalid_argument("four_equivalences_check: finite nonzero m required");
  const int n = base.n;
  const double m = base.m.value;
  const double mdual = (2.0 - n) - m;
  const std::vector<double> grid = base.interior_grid(grid_points);

  // Route (2): transformed-curvature check of (u^{-2} g, (v/u)^m, lambda, mu).
  ConformalDatum direct = ConformalDatum::from_factor(base, u);

  // Route (4): swap the roles of u and v; the base density becomes u with
  // synthetic dimension 2-m-n, the factor becomes v, constants swap.
  RadialSmms swapped = base;
  swapped.m = DimParam(mdual);
  swapped.v = u;
  ConformalDatum dual = ConformalDatum::from_factor(swapped, base.v);

  FourEquivalencesReport rep;
  std::array<double, 4> worst{};
  for (double r : grid) {
    const auto res1 = scale_system_residuals(base, u, lambda, mu, r);
    const auto res3 = scale_system_residuals(swapped, base.v, mu, lambda, r);
    const double uu = u(r), vv = base.v(r);

    const double tf_scale = (1.0 - 1.0 / n) * uu / vv;
    const double e1 = std::max(
        {tf_scale * std::fabs(res1[0]), std::fabs(res1[1]) / (n * vv * vv),
         std::fabs(m) * std::fabs(res1[2]) / (n * n * vv * vv)});
    const double tf_scale_d = (1.0 - 1.0 / n) * vv / uu;
    const double e3 = std::max(
        {tf_scale_d * std::fabs(res3[0]), std::fabs(res3[1]) / (n * uu * uu),
         std::fabs(mdual) * std::fabs(res3[2]) / (n * n * uu * uu)});

    const TransformedCurvature t2 = transformed_curvature(direct, r);
    const double e2 = std::max(
        {(1.0 - 1.0 / n) * uu * uu * std::fabs(t2.ric_rr - t2.ric_tan),
         std::fabs(uu * uu * (t2.ric_rr + (n - 1) * t2.ric_tan) - n * lambda) / n,
         std::fabs(uu * uu * t2.scalar + m * mu * (uu / vv) * (uu / vv) -
                   (m + n) * lambda) /
             n});

    const TransformedCurvature t4 = transformed_curvature(dual, r);
    const double e4 = std::max(
        {(1.0 - 1.0 / n) * vv * vv * std::fabs(t4.ric_rr - t4.ric_tan),
         std::fabs(vv * vv * (t4.ric_rr + (n - 1) * t4.ric_tan) - n * mu) / n,
         std::fabs(vv * vv * t4.scalar + mdual * lambda * (vv / uu) * (vv / uu) -
                   (mdual + n) * mu) /
             n});

    worst[0] = std::max(worst[0], e1);
    worst[1] = std::max(worst[1], e2);
    worst[2] = std::max(worst[2], e3);
    worst[3] = std::max(worst[3], e4);
  }

  const double scale = std::fabs(lambda) + std::fabs(mu) + 1.0;
  for (int i = 0; i < 4; ++i) rep.residuals[i] = worst[i] / scale;
  double lo = rep.residuals[0], hi = rep.residuals[0];
  for (double x : rep.residuals) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  rep.band_ratio = (lo > 0.0) ? hi / lo : (hi > 0.0 ? 1e300 : 1.0);
  rep.band_ok = (hi <= 1e-10) || (rep.band_ratio <= 10.0);
  return rep;
}

}  // namespace qesmms
