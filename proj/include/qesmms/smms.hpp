/** Radial smooth metric measure spaces.
 *
 * A RadialSmms is the data (M^n, g, v^m dvol_g, m) for a rotationally
 * invariant ansatz on an interval [r0, r1]:
 *
 *     g = dr^2 + psi(r)^2 g_{S^{n-1}},    weight v(r)^m = e^{-phi(r)}.
 *
 * The synthetic dimension m may be any real number or +/-inf.  At finite
 * nonzero m the density is carried by v > 0; at m = +/-inf the potential phi
 * is carried directly (v degenerates); at m = 0 the density is recorded but
 * inert (the measure is dvol_g).  n = 1 drops psi (the line has no sphere
 * factor and no intrinsic curvature).
 *
 * Pole flags mark ends where psi -> 0 and the metric closes smoothly; grids
 * for pointwise checks keep an interior margin away from the ends, where
 * the tangential curvature expressions lose digits to cancellation.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qesmms/dim_param.hpp"
#include "qesmms/profile.hpp"

#include <json.hpp>

namespace qesmms {

// Density jets at a point, in both bookkeepings where defined.
// phi = -m log v links them at finite nonzero m; at m = 0 phi is constant 0
// (inert density); at m = +/-inf only the phi side exists.
struct DensityJet {
  Jet3 phi;           // potential jet, always defined
  bool has_v = false; // v-side defined (finite nonzero m)
  Jet3 v;
};

enum class DensityKind { V, Phi };

struct RadialSmms {
  int n = 2;
  DimParam m;
  double r0 = 0.0, r1 = 1.0;
  Profile psi;   // required for n >= 2
  Profile v;     // density base; required at finite nonzero m
  Profile phi;   // potential; required at |m| = inf
  DensityKind density_kind = DensityKind::V;  // which field is authoritative
  bool pole_left = false, pole_right = false;

  void validate() const;  // throws std::invalid_argument on malformed data

  DensityJet density_jet(double r) const;

  // log of the weight e^{-phi} = v^m (0 at m = 0).
  double log_weight(double r) const;

  // Uniformly spaced points keeping a relative margin away from both ends.
  std::vector<double> interior_grid(int count, double margin = 0.02) const;

  // r pushed a small fixed margin inside flagged poles (identity elsewhere).
  // Integral functionals evaluate curvature at the clamped point: the area
  // element vanishes at a pole, so freezing the bounded curvature factors
  // over the last margin changes nothing in the limit, while the raw
  // expressions divide by psi -> 0 there.
  double interior_clamp(double r) const;

  // Weighted area element v^m psi^{n-1} (e^{-phi} psi^{n-1} at |m| = inf,
  // psi^{n-1} at m = 0).  Returns 0 instead of throwing where the density
  // base has rounded to <= 0 at a degenerate boundary.
  double area_element(double r) const;

  bool compact() const { return pole_left || pole_right ? true : false; }
};

// Descriptor (de)serialization; schema:
//   { "n": int, "m": number | "+inf" | "-inf", "domain": [r0, r1],
//     "psi": ProfileSpec (n >= 2), "v": ProfileSpec | "phi": ProfileSpec,
//     "poles": ["left", "right"] (optional) }
nlohmann::json to_descriptor(const RadialSmms& s);
RadialSmms from_descriptor(const nlohmann::json& j);

nlohmann::json dimparam_to_json(const DimParam& m);
DimParam dimparam_from_json(const nlohmann::json& j);

}  // namespace qesmms
