#include "qesmms/curvature.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qesmms {

namespace {

// Plain radial geometry of g = dr^2 + psi^2 g_{S^{n-1}}.
struct PlainGeom {
  double A = 0.0;    // psi'/psi
  double dA = 0.0;   // (psi'/psi)'
  double C = 0.0;    // psi''/psi
  double dC = 0.0;
  double B2 = 0.0;   // ((psi')^2 - 1)/psi^2, the sphere-sectional defect
  double dB2 = 0.0;
  double ric_rr = 0.0, ric_tan = 0.0, scalar = 0.0;
  double d_ric_rr = 0.0, d_ric_tan = 0.0, d_scalar = 0.0;
};

PlainGeom plain_geometry(const RadialSmms& s, double r) {
  PlainGeom p;
  if (s.n == 1) return p;  // a line is flat
  const Jet3 ps = s.psi.jet(r);
  if (!(ps.f > 0.0)) throw std::domain_error("psi must stay positive on the evaluation set");
  const int n = s.n;
  p.A = ps.d1 / ps.f;
  p.C = ps.d2 / ps.f;
  p.dA = p.C - p.A * p.A;
  p.dC = ps.d3 / ps.f - p.C * p.A;
  p.B2 = (ps.d1 * ps.d1 - 1.0) / (ps.f * ps.f);
  p.dB2 = 2.0 * p.A * (p.C - p.B2);
  p.ric_rr = -(n - 1) * p.C;
  p.ric_tan = -p.C - (n - 2) * p.B2;
  p.scalar = -2.0 * (n - 1) * p.C - (n - 1) * (n - 2) * p.B2;
  p.d_ric_rr = -(n - 1) * p.dC;
  p.d_ric_tan = -p.dC - (n - 2) * p.dB2;
  p.d_scalar = -2.0 * (n - 1) * p.dC - (n - 1) * (n - 2) * p.dB2;
  return p;
}

}  // namespace

CurvatureData curvature_data(const RadialSmms& s, double r) {
  const PlainGeom p = plain_geometry(s, r);
  const int n = s.n;
  CurvatureData c;
  c.scalar_plain = p.scalar;
  c.d_scalar_plain = p.d_scalar;

  if (s.m.finite() && s.m.value == 0.0) {
    // Inert density: every weighted quantity is the unweighted one.
    c.ric_rr = p.ric_rr;
    c.ric_tan = p.ric_tan;
    c.scalar = p.scalar;
    c.d_ric_rr = p.d_ric_rr;
    c.d_ric_tan = p.d_ric_tan;
    c.d_scalar = p.d_scalar;
    return c;
  }

  if (s.m.finite()) {
    const double m = s.m.value;
    const DensityJet d = s.density_jet(r);
    const double Lv = d.v.d1 / d.v.f;          // v'/v
    const double Hv = d.v.d2 / d.v.f;          // v''/v
    const double dLv = Hv - Lv * Lv;
    const double dHv = d.v.d3 / d.v.f - Hv * Lv;

    c.phi1 = -m * Lv;
    c.ric_rr = p.ric_rr - m * Hv;
    c.ric_tan = (n >= 2) ? p.ric_tan - m * p.A * Lv : 0.0;
    c.d_ric_rr = p.d_ric_rr - m * dHv;
    c.d_ric_tan = (n >= 2) ? p.d_ric_tan - m * (p.dA * Lv + p.A * dLv) : 0.0;

    const double lap_over_v = Hv + (n - 1) * p.A * Lv;
    const double d_lap_over_v = dHv + (n - 1) * (p.dA * Lv + p.A * dLv);
    c.scalar = p.scalar - 2.0 * m * lap_over_v - m * (m - 1.0) * Lv * Lv;
    c.d_scalar = p.d_scalar - 2.0 * m * d_lap_over_v - 2.0 * m * (m - 1.0) * Lv * dLv;

    // lap_phi phi = -m [ v''/v + (n-1) (psi'/psi)(v'/v) + (m-1)(v'/v)^2 ].
    const double Bq = lap_over_v + (m - 1.0) * Lv * Lv;
    c.lap_phi_phi = -m * Bq;
    c.d_lap_phi_phi = -m * (d_lap_over_v + 2.0 * (m - 1.0) * Lv * dLv);
    return c;
  }

  // m = +/-inf: the 1/m corrections vanish and phi carries the density.
  const Jet3 f = s.density_jet(r).phi;
  c.phi1 = f.d1;
  c.ric_rr = p.ric_rr + f.d2;
  c.ric_tan = (n >= 2) ? p.ric_tan + p.A * f.d1 : 0.0;
  c.d_ric_rr = p.d_ric_rr + f.d3;
  c.d_ric_tan = (n >= 2) ? p.d_ric_tan + p.dA * f.d1 + p.A * f.d2 : 0.0;
  const double lap_phi = f.d2 + (n - 1) * p.A * f.d1;
  const double d_lap_phi = f.d3 + (n - 1) * (p.dA * f.d1 + p.A * f.d2);
  c.scalar = p.scalar + 2.0 * lap_phi - f.d1 * f.d1;
  c.d_scalar = p.d_scalar + 2.0 * d_lap_phi - 2.0 * f.d1 * f.d2;
  c.lap_phi_phi = lap_phi - f.d1 * f.d1;
  c.d_lap_phi_phi = d_lap_phi - 2.0 * f.d1 * f.d2;
  return c;
}

double weighted_laplacian(const RadialSmms& s, const Profile& w, double r) {
  const Jet3 wj = w.jet(r);
  double lap = wj.d2;
  if (s.n >= 2) {
    const Jet3 ps = s.psi.jet(r);
    lap += (s.n - 1) * (ps.d1 / ps.f) * wj.d1;
  }
  if (s.m.finite() && s.m.value == 0.0) return lap;
  return lap - s.density_jet(r).phi.d1 * wj.d1;
}

std::pair<double, double> bakry_emery_ricci(const RadialSmms& s, double r) {
  const CurvatureData c = curvature_data(s, r);
  return {c.ric_rr, c.ric_tan};
}

double weighted_scalar(const RadialSmms& s, double r) {
  return curvature_data(s, r).scalar;
}

double bianchi_residual(const RadialSmms& s, double r) {
  const CurvatureData c = curvature_data(s, r);
  const int n = s.n;
  double div_r = c.d_ric_rr - c.ric_rr * c.phi1;
  if (n >= 2) {
    const Jet3 ps = s.psi.jet(r);
    div_r += (n - 1) * (ps.d1 / ps.f) * (c.ric_rr - c.ric_tan);
  }
  double res = div_r - 0.5 * c.d_scalar;
  if (s.m.finite() && s.m.value != 0.0)
    res += (1.0 / s.m.value) * c.lap_phi_phi * c.phi1;
  return std::fabs(res);
}

double bianchi_operator_residual(const RadialSmms& s, double r) {
  const CurvatureData c = curvature_data(s, r);
  const int n = s.n;
  double div_r = c.d_ric_rr - c.ric_rr * c.phi1;
  if (n >= 2) {
    const Jet3 ps = s.psi.jet(r);
    div_r += (n - 1) * (ps.d1 / ps.f) * (c.ric_rr - c.ric_tan);
  }
  const double d_trace = c.d_ric_rr + (n - 1) * c.d_ric_tan;
  const double lhs = div_r - 0.5 * d_trace;
  double rhs = 0.5 * c.d_lap_phi_phi;
  if (s.m.finite()) {
    if (s.m.value == 0.0)
      rhs = 0.0;
    else
      rhs -= (1.0 / s.m.value) * c.phi1 * c.lap_phi_phi;
  }
  return std::fabs(lhs - rhs);
}

QEReport qe_verify(const RadialSmms& s, const std::vector<double>& grid, double tol) {
  if (grid.empty()) throw std::invalid_argument("qe_verify: empty grid");
  s.validate();
  const int n = s.n;
  QEReport rep;

  std::vector<CurvatureData> cd;
  cd.reserve(grid.size());
  for (double r : grid) cd.push_back(curvature_data(s, r));

  // lambda: average of all Ricci eigenvalues (rr once, tangential n-1 times).
  double acc = 0.0;
  for (const auto& c : cd) acc += c.ric_rr + (n - 1) * c.ric_tan;
  rep.lambda_fit = acc / (static_cast<double>(grid.size()) * n);

  double worst = 0.0;
  for (const auto& c : cd) {
    worst = std::max(worst, std::fabs(c.ric_rr - rep.lambda_fit));
    if (n >= 2) worst = std::max(worst, std::fabs(c.ric_tan - rep.lambda_fit));
  }
  rep.max_residual = worst;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (s.m.finite() && s.m.value == 0.0) {
    rep.mu_fit = nan;
    rep.mu_variation = nan;
    rep.notes.push_back("m = 0: characteristic constant undefined (density inert)");
  } else if (s.m.finite()) {
    const double m = s.m.value;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const double vv = s.v(grid[i]);
      const double mu = ((m + n) * rep.lambda_fit - cd[i].scalar) * vv * vv / m;
      lo = std::min(lo, mu);
      hi = std::max(hi, mu);
      sum += mu;
    }
    rep.mu_fit = sum / grid.size();
    rep.mu_variation = hi - lo;
  } else {
    // Convention at |m| = inf: the characteristic constant equals lambda.
    rep.mu_fit = rep.lambda_fit;
    rep.mu_variation = 0.0;
    if (s.m.kind == DimParam::Kind::PosInf) {
      rep.has_mu_prime = true;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
      for (size_t i = 0; i < grid.size(); ++i) {
        const double ph = s.phi(grid[i]);
        const double mp = -(cd[i].scalar + 2.0 * rep.lambda_fit * (ph - n));
        lo = std::min(lo, mp);
        hi = std::max(hi, mp);
        sum += mp;
      }
      rep.mu_prime_fit = sum / grid.size();
      rep.mu_prime_variation = hi - lo;
    } else {
      rep.notes.push_back("m = -inf: mu' is not defined on this side");
    }
  }

  // Estimate checks, gated on their hypotheses.
  const bool qe_like = rep.max_residual <= std::max(tol, 1e-7) * 100.0;
  const double slack = 10.0 * std::max(tol, 1e-12);
  if (s.m.finite() && s.m.value > 1.0 && qe_like) {
    const double m = s.m.value;

    // Nontrivial compact spaces force lambda > 0 and mu > 0.
    {
      InequalityCheck ck;
      ck.name = "compact_nontrivial_positivity";
      double vlo = std::numeric_limits<double>::infinity(), vhi = -vlo;
      for (double r : grid) {
        const double vv = s.v(r);
        vlo = std::min(vlo, vv);
        vhi = std::max(vhi, vv);
      }
      const bool nontrivial = (vhi - vlo) > 1e-10 * std::max(1.0, vhi);
      ck.applicable = s.compact() && nontrivial;
      if (ck.applicable) {
        ck.margin = std::min(rep.lambda_fit, rep.mu_fit);
        ck.satisfied = ck.margin > -slack;
      }
      rep.inequality_checks.push_back(ck);
    }

    // Scalar curvature of g bounded below by n(n-1) lambda / (m+n-1).
    {
      InequalityCheck ck;
      ck.name = "scalar_lower_bound";
      ck.applicable = s.compact() && rep.lambda_fit > 0.0;
      if (ck.applicable) {
        const double bound = n * (n - 1.0) * rep.lambda_fit / (m + n - 1.0);
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& c : cd) lo = std::min(lo, c.scalar_plain);
        ck.margin = lo - bound;
        ck.satisfied = ck.margin >= -slack;
      }
      rep.inequality_checks.push_back(ck);
    }

    // |grad v|^2 + lambda v^2/(m+n-1) <= mu/(m-1).
    {
      InequalityCheck ck;
      ck.name = "gradient_estimate";
      ck.applicable = rep.lambda_fit > 0.0 && rep.mu_fit > 0.0;
      if (ck.applicable) {
        double worst_lhs = -std::numeric_limits<double>::infinity();
        for (double r : grid) {
          const Jet3 vj = s.v.jet(r);
          worst_lhs = std::max(worst_lhs, vj.d1 * vj.d1 +
                                              rep.lambda_fit * vj.f * vj.f / (m + n - 1.0));
        }
        ck.margin = rep.mu_fit / (m - 1.0) - worst_lhs;
        ck.satisfied = ck.margin >= -slack;
      }
      rep.inequality_checks.push_back(ck);
    }
  }

  // Pointwise identity tying lambda, mu, the plain scalar curvature and the
  // density gradient; holds for every quasi-Einstein space with finite
  // nonzero m, and closes the loop between the two fitted constants.
  if (s.m.finite() && s.m.value != 0.0 && qe_like) {
    const double m = s.m.value;
    InequalityCheck ck;
    ck.name = "char_const_identity";
    ck.applicable = true;
    double worst_id = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const Jet3 vj = s.v.jet(grid[i]);
      const double lhs = (n - m) * rep.lambda_fit;
      const double rhs = cd[i].scalar_plain +
                         m * (m - 1.0) * vj.d1 * vj.d1 / (vj.f * vj.f) -
                         m * rep.mu_fit / (vj.f * vj.f);
      worst_id = std::max(worst_id, std::fabs(lhs - rhs));
    }
    ck.margin = -worst_id;
    ck.satisfied = worst_id <= std::max(100.0 * tol, 1e-6);
    rep.inequality_checks.push_back(ck);
  }

  return rep;
}

double ber_flat_background_check(const RadialSmms& s, double mu,
                                 const std::vector<double>& grid) {
  double worst = 0.0;
  for (double r : grid) {
    const CurvatureData c = curvature_data(s, r);
    double res;
    if (s.m.finite()) {
      if (s.m.value == 0.0)
        throw std::invalid_argument("ber_flat_background_check: undefined at m = 0");
      const double vv = s.v(r);
      res = c.lap_phi_phi + s.m.value * mu / (vv * vv);
    } else {
      res = c.lap_phi_phi + mu;  // mu plays the role of mu' at |m| = inf
    }
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

MuLimitReport mu_limit_check(const std::vector<std::array<double, 3>>& m_lambda_mu,
                             int n, double lambda_inf, double mu_prime) {
  MuLimitReport rep;
  rep.target = mu_prime - n * lambda_inf;
  for (const auto& row : m_lambda_mu) {
    MuLimitRow out;
    out.m = row[0];
    out.lambda = row[1];
    out.mu = row[2];
    out.scaled = row[0] * (row[2] - row[1]);
    out.error = std::fabs(out.scaled - rep.target);
    rep.rows.push_back(out);
  }
  rep.decreasing = true;
  for (size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].error < rep.rows[i - 1].error)) rep.decreasing = false;
  return rep;
}

}  // namespace qesmms
