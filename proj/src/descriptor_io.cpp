#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qesmms/smms.hpp"
#include "qesmms/trajectory.hpp"

namespace qesmms {

using nlohmann::json;

json dimparam_to_json(const DimParam& m) {
  switch (m.kind) {
    case DimParam::Kind::PosInf: return json("+inf");
    case DimParam::Kind::NegInf: return json("-inf");
    default: return json(m.value);
  }
}

DimParam dimparam_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return DimParam::pos_inf();
    if (s == "-inf") return DimParam::neg_inf();
    throw std::invalid_argument("m: expected a number, \"+inf\" or \"-inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw std::invalid_argument("m: expected a number or an infinity token");
  return DimParam(j.get<double>());
}

json to_descriptor(const RadialSmms& s) {
  json j;
  j["n"] = s.n;
  j["m"] = dimparam_to_json(s.m);
  j["domain"] = {s.r0, s.r1};
  if (s.n >= 2) j["psi"] = s.psi.spec();
  if (s.density_kind == DensityKind::V)
    j["v"] = s.v.spec();
  else
    j["phi"] = s.phi.spec();
  json poles = json::array();
  if (s.pole_left) poles.push_back("left");
  if (s.pole_right) poles.push_back("right");
  if (!poles.empty()) j["poles"] = poles;
  return j;
}

RadialSmms from_descriptor(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("descriptor: expected a JSON object");
  RadialSmms s;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("descriptor: integer field 'n' required");
  s.n = j["n"].get<int>();
  if (!j.contains("m")) throw std::invalid_argument("descriptor: field 'm' required");
  s.m = dimparam_from_json(j["m"]);
  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2)
    throw std::invalid_argument("descriptor: 'domain' must be [r0, r1]");
  s.r0 = j["domain"][0].get<double>();
  s.r1 = j["domain"][1].get<double>();
  if (j.contains("psi")) s.psi = Profile::from_spec(j["psi"]);
  const bool has_v = j.contains("v"), has_phi = j.contains("phi");
  if (has_v == has_phi)
    throw std::invalid_argument("descriptor: exactly one of 'v' or 'phi' required");
  if (has_v) {
    s.v = Profile::from_spec(j["v"]);
    s.density_kind = DensityKind::V;
    if (s.m.infinite())
      throw std::invalid_argument("descriptor: m = +/-inf carries 'phi', not 'v'");
  } else {
    s.phi = Profile::from_spec(j["phi"]);
    s.density_kind = DensityKind::Phi;
    if (s.m.finite() && s.m.value != 0.0)
      throw std::invalid_argument("descriptor: finite nonzero m carries 'v', not 'phi'");
  }
  if (j.contains("poles")) {
    for (const auto& p : j["poles"]) {
      const std::string name = p.get<std::string>();
      if (name == "left")
        s.pole_left = true;
      else if (name == "right")
        s.pole_right = true;
      else
        throw std::invalid_argument("descriptor: pole entries are 'left' or 'right'");
    }
  }
  s.validate();
  return s;
}

void Trajectory::write_csv(std::ostream& os) const {
  os << "t";
  for (const auto& name : state_names) os << ',' << name;
  os << ",r,psi," << density_name << ",kappa,sphere_defect,integrability_residual\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (const auto& row : rows) {
    put(row.t);
    for (double x : row.state) {
      os << ',';
      put(x);
    }
    os << ',';
    put(row.r);
    os << ',';
    put(row.psi);
    os << ',';
    put(row.density);
    os << ',';
    put(row.kappa);
    os << ',';
    put(row.sphere_defect);
    os << ',';
    put(row.integrability_residual);
    os << '\n';
  }
}

}  // namespace qesmms
