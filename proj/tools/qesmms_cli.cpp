// Command-line front end: verification, energy evaluation, model solvers,
// m-sweeps, duality on scale tuples, and CSV export.
//
// Exit codes: 0 success, 1 input error, 2 check failure, 3 solver
// non-convergence.  Every numeric value is printed with %.17g.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qesmms/conformal.hpp"
#include "qesmms/curvature.hpp"
#include "qesmms/energy.hpp"
#include "qesmms/families.hpp"
#include "qesmms/smms.hpp"

using nlohmann::json;
using namespace qesmms;

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

DimParam parse_m(const std::string& tok) {
  if (tok == "+inf" || tok == "inf") return DimParam::pos_inf();
  if (tok == "-inf") return DimParam::neg_inf();
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return DimParam(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid m token '" + tok +
                                "' (number, '+inf' or '-inf')");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

int thread_cap() {
  if (const char* env = std::getenv("QESMMS_THREADS")) {
    const int k = std::atoi(env);
    if (k >= 1) return k;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

// Inserts defaults from a JSON config object into the token stream unless
// the user already supplied the option.
std::vector<std::string> apply_config(std::vector<std::string> tokens) {
  std::string cfg_path;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "--config") {
      if (i + 1 >= tokens.size())
        throw std::invalid_argument("--config needs a file argument");
      cfg_path = tokens[i + 1];
      tokens.erase(tokens.begin() + i, tokens.begin() + i + 2);
      break;
    }
    if (tokens[i].rfind("--config=", 0) == 0) {
      cfg_path = tokens[i].substr(9);
      tokens.erase(tokens.begin() + i);
      break;
    }
  }
  if (cfg_path.empty()) return tokens;
  const json cfg = load_json_file(cfg_path);
  if (!cfg.is_object())
    throw std::invalid_argument("--config: top-level JSON object required");
  auto user_has = [&tokens](const std::string& name) {
    const std::string flag = "--" + name;
    for (const auto& t : tokens)
      if (t == flag || t.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (user_has(it.key())) continue;
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) tokens.push_back("--" + it.key());
    } else if (v.is_string()) {
      tokens.push_back("--" + it.key());
      tokens.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      tokens.push_back("--" + it.key());
      tokens.push_back(v.is_number_integer()
                           ? std::to_string(v.get<long long>())
                           : g17(v.get<double>()));
    } else {
      throw std::invalid_argument("--config: unsupported value for '" +
                                  it.key() + "'");
    }
  }
  return tokens;
}

void print_report(const QEReport& rep) {
  std::cout << "lambda_fit = " << g17(rep.lambda_fit) << "\n";
  std::cout << "max_residual = " << g17(rep.max_residual) << "\n";
  std::cout << "mu_fit = " << g17(rep.mu_fit) << "\n";
  std::cout << "mu_variation = " << g17(rep.mu_variation) << "\n";
  if (rep.has_mu_prime) {
    std::cout << "mu_prime_fit = " << g17(rep.mu_prime_fit) << "\n";
    std::cout << "mu_prime_variation = " << g17(rep.mu_prime_variation) << "\n";
  }
  for (const auto& chk : rep.inequality_checks) {
    std::cout << "check " << chk.name << ": applicable="
              << (chk.applicable ? "yes" : "no")
              << " satisfied=" << (chk.satisfied ? "yes" : "no")
              << " margin=" << g17(chk.margin) << "\n";
  }
  for (const auto& note : rep.notes) std::cout << "note: " << note << "\n";
}

struct SweepRow {
  DimParam m;
  bool solver_failed = false;
  bool input_failed = false;
  std::string error;
  double lambda = 0.0, mu = 0.0, mu_prime = 0.0, residual = 0.0;
  bool has_mu = false, has_mu_prime = false;
};

int run_sweep(const std::string& family, const std::vector<std::string>& m_tokens,
              int n, int sign, double t_max, double tol) {
  std::vector<DimParam> ms;
  for (const auto& tok : m_tokens) ms.push_back(parse_m(tok));
  std::sort(ms.begin(), ms.end(), [](const DimParam& a, const DimParam& b) {
    auto rank = [](const DimParam& d) {
      if (d.kind == DimParam::Kind::NegInf) return -1;
      return d.kind == DimParam::Kind::PosInf ? 1 : 0;
    };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (a.kind != DimParam::Kind::Finite) return false;
    return a.value < b.value;
  });

  std::vector<SweepRow> rows(ms.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= ms.size()) return;
      SweepRow& row = rows[i];
      row.m = ms[i];
      try {
        RadialSmms s;
        if (family == "gaussian") {
          s = elliptic_gaussian(n, ms[i], sign).smms;
        } else if (family == "cigar") {
          s = cigar_solve(ms[i], t_max, tol).smms;
        } else {
          throw std::invalid_argument("unknown sweep family '" + family + "'");
        }
        const QEReport rep = qe_verify(s, s.interior_grid(129), 1e-7);
        row.lambda = rep.lambda_fit;
        row.residual = rep.max_residual;
        if (std::isfinite(rep.mu_fit)) {
          row.mu = rep.mu_fit;
          row.has_mu = true;
        }
        if (rep.has_mu_prime) {
          row.mu_prime = rep.mu_prime_fit;
          row.has_mu_prime = true;
        }
      } catch (const SolverError& e) {
        row.solver_failed = true;
        row.error = e.what();
      } catch (const std::exception& e) {
        row.input_failed = true;
        row.error = e.what();
      }
    }
  };
  const int nthreads = std::min<int>(thread_cap(), std::max<size_t>(ms.size(), 1));
  std::vector<std::thread> pool;
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::cout << "m lambda mu mu_prime residual\n";
  bool any_input = false, any_solver = false;
  for (const auto& row : rows) {
    if (row.input_failed || row.solver_failed) {
      std::cout << row.m.str() << " error: " << row.error << "\n";
      (row.input_failed ? any_input : any_solver) = true;
      continue;
    }
    std::cout << row.m.str() << " " << g17(row.lambda) << " "
              << (row.has_mu ? g17(row.mu) : std::string("-")) << " "
              << (row.has_mu_prime ? g17(row.mu_prime) : std::string("-"))
              << " " << g17(row.residual) << "\n";
  }
  if (any_input) return 1;
  if (any_solver) return 3;
  return 0;
}

void export_curves(const RadialSmms& s, int samples, double margin,
                   std::ostream& os) {
  const std::vector<double> grid = s.interior_grid(samples, margin);
  const bool use_phi = (s.density_kind == DensityKind::Phi);
  os << "r,psi," << (use_phi ? "phi" : "v")
     << ",ric_rr,ric_tan,scalar,scalar_plain\n";
  for (double r : grid) {
    const CurvatureData c = curvature_data(s, r);
    const double psi = (s.n >= 2) ? s.psi.jet(r).f : 1.0;
    const double dens = use_phi ? s.phi.jet(r).f : s.v.jet(r).f;
    os << g17(r) << ',' << g17(psi) << ',' << g17(dens) << ',' << g17(c.ric_rr)
       << ',' << g17(c.ric_tan) << ',' << g17(c.scalar) << ','
       << g17(c.scalar_plain) << "\n";
  }
}

int dispatch(int argc, char** argv) {
  CLI::App app{"quasi-Einstein smooth metric measure space laboratory"};
  app.require_subcommand(1);

  // ---- verify
  auto* sub_verify = app.add_subcommand("verify", "check a descriptor for the quasi-Einstein property");
  std::string v_in, v_lambda, v_mu;
  double v_tol = 1e-8, v_margin = 0.02;
  int v_grid = 257;
  sub_verify->add_option("--in", v_in, "descriptor JSON")->required();
  sub_verify->add_option("--tol", v_tol, "verification tolerance");
  sub_verify->add_option("--grid", v_grid, "interior grid points");
  sub_verify->add_option("--margin", v_margin, "relative interior margin");
  sub_verify->add_option("--lambda", v_lambda, "expected lambda");
  sub_verify->add_option("--mu", v_mu, "expected mu (or mu' at m = +inf)");

  // ---- energy
  auto* sub_energy = app.add_subcommand("energy", "evaluate the energy functional");
  std::string e_in;
  double e_mu = 0.0;
  sub_energy->add_option("--in", e_in, "descriptor JSON")->required();
  sub_energy->add_option("--mu", e_mu, "characteristic constant");

  // ---- solve-cigar
  auto* sub_cigar = app.add_subcommand("solve-cigar", "steady two-dimensional model");
  std::string c_m = "2", c_out, c_traj;
  double c_tmax = 10.0, c_tol = 1e-12, c_check = 0.0;
  sub_cigar->add_option("--m", c_m, "density exponent (number, '+inf')");
  sub_cigar->add_option("--t-max", c_tmax, "domain length");
  sub_cigar->add_option("--tol", c_tol, "integrator tolerance");
  sub_cigar->add_option("--out", c_out, "write solution descriptor JSON");
  sub_cigar->add_option("--trajectory", c_traj, "write trajectory CSV");
  sub_cigar->add_option("--check-tol", c_check, "fail (exit 2) if residual exceeds this");

  // ---- solve-bryant
  auto* sub_bryant = app.add_subcommand("solve-bryant", "rotationally invariant steady model");
  std::string b_m = "2", b_out, b_traj;
  int b_n = 3;
  double b_span = 600.0, b_tol = 1e-10;
  bool b_asym = false;
  sub_bryant->add_option("--n", b_n, "dimension (>= 3)");
  sub_bryant->add_option("--m", b_m, "density exponent (number > 1, '+inf')");
  sub_bryant->add_option("--t-span", b_span, "maximum flow time");
  sub_bryant->add_option("--tol", b_tol, "integrator tolerance");
  sub_bryant->add_option("--out", b_out, "write solution descriptor JSON");
  sub_bryant->add_option("--trajectory", b_traj, "write trajectory CSV");
  sub_bryant->add_flag("--asymptotics", b_asym, "report tail asymptotics (m = +inf)");

  // ---- solve-lpp
  auto* sub_lpp = app.add_subcommand("solve-lpp", "circle bundle over a Kahler-Einstein base");
  std::string l_m = "2", l_out, l_traj;
  int l_n = 4, l_s = 1, l_q = 2;
  double l_tol = 1e-9;
  sub_lpp->add_option("--n", l_n, "total dimension (even, >= 4)");
  sub_lpp->add_option("--m", l_m, "density exponent (number > 1, '+inf')");
  sub_lpp->add_option("--s", l_s, "bundle twist integer");
  sub_lpp->add_option("--q", l_q, "bundle period integer");
  sub_lpp->add_option("--tol", l_tol, "integrator tolerance");
  sub_lpp->add_option("--out", l_out, "write model JSON");
  sub_lpp->add_option("--trajectory", l_traj, "write trajectory CSV");

  // ---- sweep-m
  auto* sub_sweep = app.add_subcommand("sweep-m", "tabulate a family across m values");
  std::string s_family = "gaussian", s_mlist;
  int s_n = 3, s_sign = 1;
  double s_tmax = 10.0, s_tol = 1e-12;
  sub_sweep->add_option("--family", s_family, "gaussian or cigar");
  sub_sweep->add_option("--m-list", s_mlist, "comma-separated m tokens")->required();
  sub_sweep->add_option("--n", s_n, "dimension (gaussian)");
  sub_sweep->add_option("--sign", s_sign, "+1 or -1 (gaussian)");
  sub_sweep->add_option("--t-max", s_tmax, "domain length (cigar)");
  sub_sweep->add_option("--tol", s_tol, "integrator tolerance (cigar)");

  // ---- duality
  auto* sub_dual = app.add_subcommand("duality", "apply the parameter duality to a scale tuple");
  std::string d_in, d_out, d_base;
  int d_grid = 65;
  sub_dual->add_option("--in", d_in, "scale tuple JSON")->required();
  sub_dual->add_option("--out", d_out, "write the dual tuple JSON");
  sub_dual->add_option("--base", d_base,
                       "descriptor JSON supplying the radial geometry; "
                       "checks residual invariance");
  sub_dual->add_option("--grid", d_grid, "grid points for the invariance check");

  // ---- export
  auto* sub_export = app.add_subcommand("export", "sample curvature curves to CSV");
  std::string x_in, x_family, x_m = "2", x_out, x_desc_out;
  int x_n = 3, x_sign = 1, x_samples = 512;
  double x_tmax = 10.0, x_margin = 0.005;
  sub_export->add_option("--in", x_in, "descriptor JSON");
  sub_export->add_option("--family", x_family, "gaussian or cigar (instead of --in)");
  sub_export->add_option("--m", x_m, "density exponent for --family");
  sub_export->add_option("--n", x_n, "dimension for --family gaussian");
  sub_export->add_option("--sign", x_sign, "+1 or -1 for --family gaussian");
  sub_export->add_option("--t-max", x_tmax, "domain length for --family cigar");
  sub_export->add_option("--samples", x_samples, "sample count");
  sub_export->add_option("--margin", x_margin, "relative interior margin");
  sub_export->add_option("--out", x_out, "output CSV path (default stdout)");
  sub_export->add_option("--descriptor-out", x_desc_out,
                         "round-trip: rewrite the parsed descriptor here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;
  }

  if (sub_verify->parsed()) {
    const RadialSmms s = from_descriptor(load_json_file(v_in));
    const QEReport rep = qe_verify(s, s.interior_grid(v_grid, v_margin), v_tol);
    print_report(rep);
    bool ok = rep.quasi_einstein(v_tol);
    if (!v_lambda.empty()) {
      const double want = std::stod(v_lambda);
      ok = ok && std::fabs(rep.lambda_fit - want) <= v_tol * (1.0 + std::fabs(want));
    }
    if (!v_mu.empty()) {
      const double want = std::stod(v_mu);
      const double got = rep.has_mu_prime ? rep.mu_prime_fit : rep.mu_fit;
      ok = ok && std::fabs(got - want) <= v_tol * (1.0 + std::fabs(want));
    }
    std::cout << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 2;
  }

  if (sub_energy->parsed()) {
    const RadialSmms s = from_descriptor(load_json_file(e_in));
    const EnergyValue vol = weighted_volume(s);
    const EnergyValue en = energy(s, e_mu);
    std::cout << "volume = " << g17(vol.value) << "\n";
    std::cout << "volume_error = " << g17(vol.error_estimate) << "\n";
    std::cout << "energy = " << g17(en.value) << "\n";
    std::cout << "energy_error = " << g17(en.error_estimate) << "\n";
    std::cout << "integrable = " << (en.integrable && vol.integrable ? "yes" : "no")
              << "\n";
    return (en.integrable && vol.integrable) ? 0 : 2;
  }

  if (sub_cigar->parsed()) {
    const CigarSolution sol = cigar_solve(parse_m(c_m), c_tmax, c_tol);
    double resid = 0.0;
    for (double r : sol.smms.interior_grid(257)) {
      const auto [rr, tan] = bakry_emery_ricci(sol.smms, r);
      resid = std::max({resid, std::fabs(rr), std::fabs(tan)});
    }
    std::cout << "lambda = 0\n";
    std::cout << (sol.smms.m.infinite() ? "mu_prime = " : "mu = ")
              << g17(sol.mu) << "\n";
    std::cout << "max_residual = " << g17(resid) << "\n";
    if (!c_out.empty()) write_text_file(c_out, to_descriptor(sol.smms).dump(2) + "\n");
    if (!c_traj.empty()) {
      std::ofstream os(c_traj);
      if (!os) throw std::invalid_argument("cannot write '" + c_traj + "'");
      sol.trajectory.write_csv(os);
    }
    if (c_check > 0.0 && resid > c_check) {
      std::cout << "verdict: FAIL (residual above " << g17(c_check) << ")\n";
      return 2;
    }
    return 0;
  }

  if (sub_bryant->parsed()) {
    const DimParam m = parse_m(b_m);
    const BryantSolution sol = bohm_bryant_solve(b_n, m, b_span, b_tol);
    std::cout << "point_I = " << g17(sol.point_I[0]) << " " << g17(sol.point_I[1])
              << " " << g17(sol.point_I[2]) << "\n";
    std::cout << "point_K = " << g17(sol.point_K[0]) << " " << g17(sol.point_K[1])
              << " " << g17(sol.point_K[2]) << "\n";
    std::cout << "eigenvalues_at_I = " << g17(sol.eigenvalues_at_I[0]) << " "
              << g17(sol.eigenvalues_at_I[1]) << " "
              << g17(sol.eigenvalues_at_I[2]) << "\n";
    std::cout << (m.infinite() ? "mu_prime = " : "mu = ") << g17(sol.mu) << "\n";
    std::cout << "steps = " << sol.trajectory.rows.size() << "\n";
    std::cout << "kappa_monotone_steps = " << sol.kappa_monotone_steps << "\n";
    std::cout << "domain = [" << g17(sol.smms.r0) << ", " << g17(sol.smms.r1)
              << "]\n";
    if (b_asym) {
      if (!m.infinite())
        throw std::invalid_argument("--asymptotics requires --m +inf");
      const BryantAsymptotics asym = bryant_asymptotics_check(sol.trajectory, b_n);
      std::cout << "psi_sq_exponent = " << g17(asym.psi_sq_exponent) << "\n";
      std::cout << "x_over_y2 = " << g17(asym.x_over_y2) << "\n";
      std::cout << "linear_coeff = " << g17(asym.linear_coeff) << "\n";
    }
    if (!b_out.empty()) write_text_file(b_out, to_descriptor(sol.smms).dump(2) + "\n");
    if (!b_traj.empty()) {
      std::ofstream os(b_traj);
      if (!os) throw std::invalid_argument("cannot write '" + b_traj + "'");
      sol.trajectory.write_csv(os);
    }
    return 0;
  }

  if (sub_lpp->parsed()) {
    const DimParam m = parse_m(l_m);
    const LppSolution sol = lpp_solve(l_n, m, l_s, l_q, l_tol);
    std::cout << "lambda = " << g17(sol.model.lambda) << "\n";
    std::cout << (m.infinite() ? "mu_prime = " : "mu = ") << g17(sol.model.mu)
              << "\n";
    std::cout << "l = " << g17(sol.model.l) << "\n";
    std::cout << "closure_error = " << g17(sol.closure_error) << "\n";
    std::cout << "max_integrability = " << g17(sol.max_integrability) << "\n";
    std::cout << "min_scalar_gap = " << g17(sol.min_scalar_gap) << "\n";
    if (!l_out.empty()) {
      json j{{"family", "lpp"},
             {"n", sol.model.n},
             {"m", dimparam_to_json(sol.model.m)},
             {"s", sol.model.s},
             {"q", sol.model.q},
             {"l", sol.model.l},
             {"lambda", sol.model.lambda},
             {"mu", sol.model.mu},
             {"f", sol.model.f.spec()},
             {"h", sol.model.h.spec()}};
      if (m.infinite())
        j["phi"] = sol.model.phi.spec();
      else
        j["v"] = sol.model.v.spec();
      write_text_file(l_out, j.dump(2) + "\n");
    }
    if (!l_traj.empty()) {
      std::ofstream os(l_traj);
      if (!os) throw std::invalid_argument("cannot write '" + l_traj + "'");
      sol.trajectory.write_csv(os);
    }
    if (sol.min_scalar_gap <= 0.0) {
      std::cout << "verdict: FAIL (scalar curvature bound violated)\n";
      return 2;
    }
    return 0;
  }

  if (sub_sweep->parsed()) {
    std::vector<std::string> toks;
    std::stringstream ss(s_mlist);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) toks.push_back(tok);
    }
    if (toks.empty()) throw std::invalid_argument("--m-list is empty");
    return run_sweep(s_family, toks, s_n, s_sign, s_tmax, s_tol);
  }

  if (sub_dual->parsed()) {
    const ScaleTuple t = scale_tuple_from_json(load_json_file(d_in));
    const ScaleTuple d = duality_map(t);
    const json out = scale_tuple_to_json(d);
    if (d_out.empty())
      std::cout << out.dump(2) << "\n";
    else
      write_text_file(d_out, out.dump(2) + "\n");
    if (!d_base.empty()) {
      RadialSmms base = from_descriptor(load_json_file(d_base));
      base.m = t.m;
      base.v = t.v;
      base.density_kind = DensityKind::V;
      base.validate();
      RadialSmms dual_base = base;
      dual_base.m = d.m;
      dual_base.v = d.v;
      dual_base.validate();
      double worst = 0.0;
      for (double r : base.interior_grid(d_grid)) {
        const auto r0 = scale_system_residuals(base, t.u, t.lambda, t.mu, r);
        const auto r1 = scale_system_residuals(dual_base, d.u, d.lambda, d.mu, r);
        worst = std::max({worst, std::fabs(r0[0] - r1[0]),
                          std::fabs(r0[1] - r1[2]), std::fabs(r0[2] - r1[1])});
      }
      std::cout << "invariance_defect = " << g17(worst) << "\n";
      if (worst > 1e-12) {
        std::cout << "verdict: FAIL (duality invariance broken)\n";
        return 2;
      }
    }
    return 0;
  }

  if (sub_export->parsed()) {
    if (x_in.empty() == x_family.empty())
      throw std::invalid_argument("export: exactly one of --in / --family");
    RadialSmms s;
    if (!x_in.empty()) {
      s = from_descriptor(load_json_file(x_in));
    } else if (x_family == "gaussian") {
      s = elliptic_gaussian(x_n, parse_m(x_m), x_sign).smms;
    } else if (x_family == "cigar") {
      s = cigar_solve(parse_m(x_m), x_tmax, 1e-12).smms;
    } else {
      throw std::invalid_argument("unknown export family '" + x_family + "'");
    }
    if (!x_desc_out.empty())
      write_text_file(x_desc_out, to_descriptor(s).dump(2) + "\n");
    if (x_out.empty()) {
      export_curves(s, x_samples, x_margin, std::cout);
    } else {
      std::ofstream os(x_out);
      if (!os) throw std::invalid_argument("cannot write '" + x_out + "'");
      export_curves(s, x_samples, x_margin, os);
    }
    return 0;
  }

  return 1;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> tokens(argv, argv + argc);
  try {
    tokens = apply_config(std::move(tokens));
    std::vector<char*> cargv;
    cargv.reserve(tokens.size());
    for (auto& t : tokens) cargv.push_back(t.data());
    return dispatch(int(cargv.size()), cargv.data());
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}
