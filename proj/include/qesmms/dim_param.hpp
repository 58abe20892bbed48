/** Synthetic dimension parameter m of a smooth metric measure space.
 *
 * m ranges over the reals together with the two infinities.  The infinities
 * are first-class values, not large floats: curvature operators dispatch on
 * the kind so that the m = +/-inf formulas are evaluated in closed form
 * rather than as numerical limits.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qesmms {

struct DimParam {
  enum class Kind { Finite, PosInf, NegInf };

  Kind kind = Kind::Finite;
  double value = 0.0;  // meaningful only when kind == Finite

  DimParam() = default;
  DimParam(double v) : kind(Kind::Finite), value(v) {
    if (!std::isfinite(v)) throw std::invalid_argument("DimParam: non-finite double; use DimParam::pos_inf()/neg_inf()");
  }

  static DimParam pos_inf() { DimParam d; d.kind = Kind::PosInf; return d; }
  static DimParam neg_inf() { DimParam d; d.kind = Kind::NegInf; return d; }

  bool finite() const { return kind == Kind::Finite; }
  bool infinite() const { return kind != Kind::Finite; }

  // Finite value accessor; throws on infinities so misuse fails loudly.
  double fin() const {
    if (!finite()) throw std::logic_error("DimParam: finite value requested at m = +/-inf");
    return value;
  }

  std::string str() const {
    switch (kind) {
      case Kind::PosInf: return "+inf";
      case Kind::NegInf: return "-inf";
      default: {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        return buf;
      }
    }
  }

  bool operator==(const DimParam& o) const {
    return kind == o.kind && (kind != Kind::Finite || value == o.value);
  }
};

}  // namespace qesmms
