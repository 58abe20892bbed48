#include "qesmms/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qesmms {

namespace {

using nlohmann::json;

class ConstantNode : public ProfileNode {
 public:
  explicit ConstantNode(double c) : c_(c) {}
  Jet3 jet(double) const override { return jet_constant(c_); }
  json spec() const override { return {{"kind", "constant"}, {"value", c_}}; }

 private:
  double c_;
};

class PolynomialNode : public ProfileNode {
 public:
  explicit PolynomialNode(std::vector<double> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("polynomial: empty coefficients");
  }
  Jet3 jet(double r) const override {
    // Horner for the value and first three derivatives together.
    double f = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      d3 = d3 * r + 3.0 * d2;
      d2 = d2 * r + 2.0 * d1;
      d1 = d1 * r + f;
      f = f * r + *it;
    }
    return {f, d1, d2, d3};
  }
  json spec() const override { return {{"kind", "polynomial"}, {"coeffs", c_}}; }

 private:
  std::vector<double> c_;
};

enum class Wave { Sin, Cos, Sinh, Cosh, Sech2 };

class WaveNode : public ProfileNode {
 public:
  WaveNode(Wave w, double amp, double freq, double phase)
      : w_(w), amp_(amp), freq_(freq), phase_(phase) {}
  Jet3 jet(double r) const override {
    const double x = freq_ * r + phase_;
    switch (w_) {
      case Wave::Sin: return jet_sin(amp_, freq_, x);
      case Wave::Cos: return jet_cos(amp_, freq_, x);
      case Wave::Sinh: return jet_sinh(amp_, freq_, x);
      case Wave::Cosh: return jet_cosh(amp_, freq_, x);
      case Wave::Sech2: return jet_sech2(amp_, freq_, x);
    }
    return {};
  }
  json spec() const override {
    static const char* names[] = {"sin", "cos", "sinh", "cosh", "sech2"};
    return {{"kind", names[static_cast<int>(w_)]},
            {"amp", amp_},
            {"freq", freq_},
            {"phase", phase_}};
  }

 private:
  Wave w_;
  double amp_, freq_, phase_;
};

class ExpQuadraticNode : public ProfileNode {
 public:
  ExpQuadraticNode(double amp, double c2, double c1, double c0)
      : amp_(amp), c2_(c2), c1_(c1), c0_(c0) {}
  Jet3 jet(double r) const override {
    const Jet3 q{c2_ * r * r + c1_ * r + c0_, 2.0 * c2_ * r + c1_, 2.0 * c2_, 0.0};
    return amp_ * jet_exp(q);
  }
  json spec() const override {
    return {{"kind", "exp_quadratic"}, {"amp", amp_}, {"c2", c2_}, {"c1", c1_}, {"c0", c0_}};
  }

 private:
  double amp_, c2_, c1_, c0_;
};

class BumpNode : public ProfileNode {
 public:
  BumpNode(double amp, double a, double b, int k) : amp_(amp), a_(a), b_(b), k_(k) {
    if (!(b > a)) throw std::invalid_argument("bump: requires b > a");
    if (k < 4) throw std::invalid_argument("bump: k >= 4 keeps jets continuous");
  }
  Jet3 jet(double r) const override {
    if (r <= a_ || r >= b_) return jet_constant(0.0);
    const double s = 0.5 * (b_ - a_);
    // u = (r-a)(b-r)/s^2, a quadratic with u <= 1.
    const Jet3 u{(r - a_) * (b_ - r) / (s * s), (a_ + b_ - 2.0 * r) / (s * s),
                 -2.0 / (s * s), 0.0};
    return amp_ * jet_pow(u, static_cast<double>(k_));
  }
  json spec() const override {
    return {{"kind", "bump"}, {"amp", amp_}, {"a", a_}, {"b", b_}, {"k", k_}};
  }

 private:
  double amp_, a_, b_;
  int k_;
};

class SumNode : public ProfileNode {
 public:
  explicit SumNode(std::vector<Profile> t) : terms_(std::move(t)) {
    if (terms_.empty()) throw std::invalid_argument("sum: no terms");
  }
  Jet3 jet(double r) const override {
    Jet3 acc = terms_[0].jet(r);
    for (size_t i = 1; i < terms_.size(); ++i) acc = acc + terms_[i].jet(r);
    return acc;
  }
  json spec() const override {
    json arr = json::array();
    for (const auto& t : terms_) arr.push_back(t.spec());
    return {{"kind", "sum"}, {"terms", arr}};
  }

 private:
  std::vector<Profile> terms_;
};

class ProductNode : public ProfileNode {
 public:
  explicit ProductNode(std::vector<Profile> f) : factors_(std::move(f)) {
    if (factors_.empty()) throw std::invalid_argument("product: no factors");
  }
  Jet3 jet(double r) const override {
    Jet3 acc = factors_[0].jet(r);
    for (size_t i = 1; i < factors_.size(); ++i) acc = acc * factors_[i].jet(r);
    return acc;
  }
  json spec() const override {
    json arr = json::array();
    for (const auto& t : factors_) arr.push_back(t.spec());
    return {{"kind", "product"}, {"factors", arr}};
  }

 private:
  std::vector<Profile> factors_;
};

class PowerNode : public ProfileNode {
 public:
  PowerNode(Profile base, double p) : base_(std::move(base)), p_(p) {}
  Jet3 jet(double r) const override { return jet_pow(base_.jet(r), p_); }
  json spec() const override {
    return {{"kind", "power"}, {"base", base_.spec()}, {"exponent", p_}};
  }

 private:
  Profile base_;
  double p_;
};

class LogNode : public ProfileNode {
 public:
  explicit LogNode(Profile base) : base_(std::move(base)) {}
  Jet3 jet(double r) const override { return jet_log(base_.jet(r)); }
  json spec() const override { return {{"kind", "log"}, {"base", base_.spec()}}; }

 private:
  Profile base_;
};

class ExpNode : public ProfileNode {
 public:
  explicit ExpNode(Profile base) : base_(std::move(base)) {}
  Jet3 jet(double r) const override { return jet_exp(base_.jet(r)); }
  json spec() const override { return {{"kind", "exp"}, {"base", base_.spec()}}; }

 private:
  Profile base_;
};

// d/dr of the child.  The child's jet supplies three derivatives of itself,
// hence two of this node; the node's own third derivative (a fourth
// derivative of the child) falls back to a centered difference of the
// child's third derivative.
class DerivativeNode : public ProfileNode {
 public:
  explicit DerivativeNode(Profile base) : base_(std::move(base)) {}
  Jet3 jet(double r) const override {
    const Jet3 b = base_.jet(r);
    const double h = 1e-5 * std::max(1.0, std::fabs(r));
    const double d4 = (base_.jet(r + h).d3 - base_.jet(r - h).d3) / (2.0 * h);
    return {b.d1, b.d2, b.d3, d4};
  }
  json spec() const override {
    return {{"kind", "derivative"}, {"base", base_.spec()}};
  }

 private:
  Profile base_;
};

class SampledNode : public ProfileNode {
 public:
  SampledNode(std::vector<double> grid, std::vector<double> values, int order)
      : x_(std::move(grid)), y_(std::move(values)), p_(order) {
    if (x_.size() != y_.size()) throw std::invalid_argument("sampled: grid/values size mismatch");
    if (p_ < 1) throw std::invalid_argument("sampled: order must be >= 1");
    if (x_.size() < static_cast<size_t>(p_ + 1))
      throw std::invalid_argument("sampled: need at least order+1 samples");
    for (size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("sampled: grid not strictly increasing");
  }

  Jet3 jet(double r) const override {
    double f, d1, d2;
    interp012(r, f, d1, d2);
    // Third derivative: one centered difference of the interpolated second
    // derivative, step equal to the local node spacing.
    double h = local_spacing(r);
    double rp = r + h, rm = r - h;
    if (rp > x_.back()) rp = x_.back();
    if (rm < x_.front()) rm = x_.front();
    double fp, d1p, d2p, fm, d1m, d2m;
    interp012(rp, fp, d1p, d2p);
    interp012(rm, fm, d1m, d2m);
    const double d3 = (rp > rm) ? (d2p - d2m) / (rp - rm) : 0.0;
    return {f, d1, d2, d3};
  }

  json spec() const override {
    return {{"kind", "sampled"}, {"grid", x_}, {"values", y_}, {"order", p_}};
  }

 private:
  double local_spacing(double r) const {
    auto it = std::lower_bound(x_.begin(), x_.end(), r);
    size_t i = std::min<size_t>(std::distance(x_.begin(), it), x_.size() - 1);
    if (i == 0) i = 1;
    return x_[i] - x_[i - 1];
  }

  // Local polynomial of degree p on the p+1 nearest nodes, written in powers
  // of (x - r)/h for conditioning; Gaussian elimination (window is small).
  void interp012(double r, double& f, double& d1, double& d2) const {
    const int np = p_ + 1;
    auto it = std::lower_bound(x_.begin(), x_.end(), r);
    long idx = std::distance(x_.begin(), it);
    long i0 = idx - (np + 1) / 2;
    i0 = std::max<long>(0, std::min<long>(i0, static_cast<long>(x_.size()) - np));
    const double h = (x_[i0 + np - 1] - x_[i0]) / std::max(1, np - 1);

    double A[12][13];  // order capped at 11 by the parse layer
    for (int j = 0; j < np; ++j) {
      const double xi = (x_[i0 + j] - r) / h;
      double pw = 1.0;
      for (int k = 0; k < np; ++k) {
        A[j][k] = pw;
        pw *= xi;
      }
      A[j][np] = y_[i0 + j];
    }
    // Partial-pivot elimination.
    for (int col = 0; col < np; ++col) {
      int piv = col;
      for (int jr = col + 1; jr < np; ++jr)
        if (std::fabs(A[jr][col]) > std::fabs(A[piv][col])) piv = jr;
      if (piv != col)
        for (int k = col; k <= np; ++k) std::swap(A[piv][k], A[col][k]);
      const double diag = A[col][col];
      if (diag == 0.0) throw std::runtime_error("sampled: singular interpolation window");
      for (int jr = col + 1; jr < np; ++jr) {
        const double fct = A[jr][col] / diag;
        for (int k = col; k <= np; ++k) A[jr][k] -= fct * A[col][k];
      }
    }
    double c[12];
    for (int jr = np - 1; jr >= 0; --jr) {
      double s = A[jr][np];
      for (int k = jr + 1; k < np; ++k) s -= A[jr][k] * c[k];
      c[jr] = s / A[jr][jr];
    }
    f = c[0];
    d1 = (np > 1 ? c[1] / h : 0.0);
    d2 = (np > 2 ? 2.0 * c[2] / (h * h) : 0.0);
  }

  std::vector<double> x_, y_;
  int p_;
};

class CustomNode : public ProfileNode {
 public:
  CustomNode(std::function<Jet3(double)> fn, double r0, double r1, int n, int order)
      : fn_(std::move(fn)), r0_(r0), r1_(r1), n_(n), order_(order) {}
  Jet3 jet(double r) const override { return fn_(r); }
  json spec() const override {
    std::vector<double> grid(n_), vals(n_);
    for (int i = 0; i < n_; ++i) {
      grid[i] = r0_ + (r1_ - r0_) * i / (n_ - 1);
      vals[i] = fn_(grid[i]).f;
    }
    return {{"kind", "sampled"}, {"grid", grid}, {"values", vals}, {"order", order_}};
  }

 private:
  std::function<Jet3(double)> fn_;
  double r0_, r1_;
  int n_, order_;
};

double need_num(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("profile spec: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

}  // namespace

Jet3 Profile::jet(double r) const {
  if (!node_) throw std::logic_error("Profile: evaluating empty profile");
  return node_->jet(r);
}

nlohmann::json Profile::spec() const {
  if (!node_) throw std::logic_error("Profile: serializing empty profile");
  return node_->spec();
}

Profile Profile::constant(double c) { return Profile(std::make_shared<ConstantNode>(c)); }
Profile Profile::polynomial(std::vector<double> c) {
  return Profile(std::make_shared<PolynomialNode>(std::move(c)));
}
Profile Profile::sin(double a, double w, double p) {
  return Profile(std::make_shared<WaveNode>(Wave::Sin, a, w, p));
}
Profile Profile::cos(double a, double w, double p) {
  return Profile(std::make_shared<WaveNode>(Wave::Cos, a, w, p));
}
Profile Profile::sinh(double a, double w, double p) {
  return Profile(std::make_shared<WaveNode>(Wave::Sinh, a, w, p));
}
Profile Profile::cosh(double a, double w, double p) {
  return Profile(std::make_shared<WaveNode>(Wave::Cosh, a, w, p));
}
Profile Profile::sech2(double a, double w, double p) {
  return Profile(std::make_shared<WaveNode>(Wave::Sech2, a, w, p));
}
Profile Profile::exp_quadratic(double a, double c2, double c1, double c0) {
  return Profile(std::make_shared<ExpQuadraticNode>(a, c2, c1, c0));
}
Profile Profile::bump(double amp, double a, double b, int k) {
  return Profile(std::make_shared<BumpNode>(amp, a, b, k));
}
Profile Profile::sum(std::vector<Profile> t) {
  return Profile(std::make_shared<SumNode>(std::move(t)));
}
Profile Profile::product(std::vector<Profile> f) {
  return Profile(std::make_shared<ProductNode>(std::move(f)));
}
Profile Profile::power(Profile b, double p) {
  return Profile(std::make_shared<PowerNode>(std::move(b), p));
}
Profile Profile::log(Profile b) { return Profile(std::make_shared<LogNode>(std::move(b))); }
Profile Profile::exp(Profile b) { return Profile(std::make_shared<ExpNode>(std::move(b))); }
Profile Profile::derivative(Profile b) {
  return Profile(std::make_shared<DerivativeNode>(std::move(b)));
}
Profile Profile::sampled(std::vector<double> g, std::vector<double> v, int order) {
  if (order > 11) throw std::invalid_argument("sampled: order capped at 11");
  return Profile(std::make_shared<SampledNode>(std::move(g), std::move(v), order));
}
Profile Profile::custom(std::function<Jet3(double)> fn, double r0, double r1,
                        int n_export, int export_order) {
  return Profile(std::make_shared<CustomNode>(std::move(fn), r0, r1, n_export, export_order));
}

Profile Profile::from_spec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("profile spec: expected object with string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") return constant(need_num(j, "value"));
  if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw std::invalid_argument("profile spec: polynomial needs 'coeffs' array");
    return polynomial(j["coeffs"].get<std::vector<double>>());
  }
  if (kind == "sin" || kind == "cos" || kind == "sinh" || kind == "cosh" || kind == "sech2") {
    const double a = need_num(j, "amp"), w = need_num(j, "freq");
    const double p = j.contains("phase") ? need_num(j, "phase") : 0.0;
    if (kind == "sin") return sin(a, w, p);
    if (kind == "cos") return cos(a, w, p);
    if (kind == "sinh") return sinh(a, w, p);
    if (kind == "cosh") return cosh(a, w, p);
    return sech2(a, w, p);
  }
  if (kind == "exp_quadratic")
    return exp_quadratic(need_num(j, "amp"), need_num(j, "c2"), need_num(j, "c1"),
                         need_num(j, "c0"));
  if (kind == "bump") {
    const int k = j.contains("k") ? j["k"].get<int>() : 4;
    return bump(need_num(j, "amp"), need_num(j, "a"), need_num(j, "b"), k);
  }
  if (kind == "sum" || kind == "product") {
    const char* field = (kind == "sum") ? "terms" : "factors";
    if (!j.contains(field) || !j[field].is_array() || j[field].empty())
      throw std::invalid_argument("profile spec: combinator needs non-empty child array");
    std::vector<Profile> ch;
    for (const auto& c : j[field]) ch.push_back(from_spec(c));
    return (kind == "sum") ? sum(std::move(ch)) : product(std::move(ch));
  }
  if (kind == "power") return power(from_spec(j.at("base")), need_num(j, "exponent"));
  if (kind == "log") return log(from_spec(j.at("base")));
  if (kind == "exp") return exp(from_spec(j.at("base")));
  if (kind == "derivative") return derivative(from_spec(j.at("base")));
  if (kind == "sampled") {
    if (!j.contains("grid") || !j.contains("values"))
      throw std::invalid_argument("profile spec: sampled needs 'grid' and 'values'");
    const int order = j.contains("order") ? j["order"].get<int>() : 5;
    return sampled(j["grid"].get<std::vector<double>>(),
                   j["values"].get<std::vector<double>>(), order);
  }
  throw std::invalid_argument("profile spec: unknown kind '" + kind + "'");
}

}  // namespace qesmms
