/** Third-order jets of scalar functions of one variable.
 *
 * A Jet3 carries the value of a function together with its first three
 * derivatives at a point.  All curvature quantities in this library are
 * evaluated through jet arithmetic, so closed-form profiles propagate
 * derivatives exactly (no finite differencing except where a profile is
 * itself tabulated data).
 */
#pragma once

#include <cmath>

namespace qesmms {

struct Jet3 {
  double f = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative
  double d3 = 0.0;  // third derivative
};

inline Jet3 jet_constant(double c) { return {c, 0.0, 0.0, 0.0}; }

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

// Leibniz rule through third order.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

inline Jet3 operator*(double c, const Jet3& a) {
  return {c * a.f, c * a.d1, c * a.d2, c * a.d3};
}

// g = u^p for real exponent p; requires u.f > 0 unless p is a small
// non-negative integer (callers guarantee positivity for metric data).
inline Jet3 jet_pow(const Jet3& u, double p) {
  const double f = std::pow(u.f, p);
  const double q1 = p * std::pow(u.f, p - 1.0);
  const double q2 = p * (p - 1.0) * std::pow(u.f, p - 2.0);
  const double q3 = p * (p - 1.0) * (p - 2.0) * std::pow(u.f, p - 3.0);
  return {f,
          q1 * u.d1,
          q2 * u.d1 * u.d1 + q1 * u.d2,
          q3 * u.d1 * u.d1 * u.d1 + 3.0 * q2 * u.d1 * u.d2 + q1 * u.d3};
}

inline Jet3 jet_recip(const Jet3& u) { return jet_pow(u, -1.0); }

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * jet_recip(b); }

inline Jet3 jet_log(const Jet3& u) {
  const double r = u.d1 / u.f;
  return {std::log(u.f),
          r,
          u.d2 / u.f - r * r,
          u.d3 / u.f - 3.0 * u.d2 * u.d1 / (u.f * u.f) + 2.0 * r * r * r};
}

inline Jet3 jet_exp(const Jet3& u) {
  const double e = std::exp(u.f);
  return {e,
          e * u.d1,
          e * (u.d2 + u.d1 * u.d1),
          e * (u.d3 + 3.0 * u.d1 * u.d2 + u.d1 * u.d1 * u.d1)};
}

// Trigonometric / hyperbolic jets of a*fn(w r + p); evaluated at x = w r + p.
inline Jet3 jet_sin(double a, double w, double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {a * s, a * w * c, -a * w * w * s, -a * w * w * w * c};
}

inline Jet3 jet_cos(double a, double w, double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {a * c, -a * w * s, -a * w * w * c, a * w * w * w * s};
}

inline Jet3 jet_sinh(double a, double w, double x) {
  const double s = std::sinh(x), c = std::cosh(x);
  return {a * s, a * w * c, a * w * w * s, a * w * w * w * c};
}

inline Jet3 jet_cosh(double a, double w, double x) {
  const double s = std::sinh(x), c = std::cosh(x);
  return {a * c, a * w * s, a * w * w * c, a * w * w * w * s};
}

// a * sech^2(w r + p).  d/dx sech^2 = -2 sech^2 tanh, d/dx tanh = sech^2.
inline Jet3 jet_sech2(double a, double w, double x) {
  const double s2 = 1.0 / (std::cosh(x) * std::cosh(x));
  const double t = std::tanh(x);
  return {a * s2,
          a * w * (-2.0 * s2 * t),
          a * w * w * (4.0 * s2 * t * t - 2.0 * s2 * s2),
          a * w * w * w * (16.0 * s2 * s2 * t - 8.0 * s2 * t * t * t)};
}

}  // namespace qesmms
