#pragma once

#include "dsfem/geometry.hpp"

namespace dsfem {

/// A scalar value together with its gradient; arithmetic applies the
/// product and quotient rules, so shape functions can be composed directly.
struct ValueGrad {
  double v = 0.0;
  Vec2 g{};

  static constexpr ValueGrad constant(double c) { return {c, {0.0, 0.0}}; }
};

constexpr ValueGrad operator+(const ValueGrad& a, const ValueGrad& b) { return {a.v + b.v, a.g + b.g}; }
constexpr ValueGrad operator-(const ValueGrad& a, const ValueGrad& b) { return {a.v - b.v, a.g - b.g}; }
constexpr ValueGrad operator-(const ValueGrad& a) { return {-a.v, -a.g}; }
constexpr ValueGrad operator*(const ValueGrad& a, const ValueGrad& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g};
}
constexpr ValueGrad operator*(double s, const ValueGrad& a) { return {s * a.v, s * a.g}; }
constexpr ValueGrad operator*(const ValueGrad& a, double s) { return {s * a.v, s * a.g}; }
constexpr ValueGrad operator+(const ValueGrad& a, double c) { return {a.v + c, a.g}; }
constexpr ValueGrad operator-(const ValueGrad& a, double c) { return {a.v - c, a.g}; }
constexpr ValueGrad operator/(const ValueGrad& a, const ValueGrad& b) {
  return {a.v / b.v, (b.v * a.g - a.v * b.g) / (b.v * b.v)};
}
constexpr ValueGrad operator/(const ValueGrad& a, double s) { return {a.v / s, a.g / s}; }

/// a^n for n >= 0.
constexpr ValueGrad pow(const ValueGrad& a, int n) {
  if (n == 0) return ValueGrad::constant(1.0);
  double p = 1.0;
  for (int k = 0; k < n - 1; ++k) p *= a.v;
  return {p * a.v, (n * p) * a.g};
}

/// Affine function l(x) = grad . x + c on the plane.
struct Affine {
  Vec2 grad{};
  double c = 0.0;

  constexpr double operator()(const Point2& x) const { return dot(grad, x) + c; }
  constexpr ValueGrad eval(const Point2& x) const { return {(*this)(x), grad}; }

  friend constexpr Affine operator+(const Affine& a, const Affine& b) { return {a.grad + b.grad, a.c + b.c}; }
  friend constexpr Affine operator-(const Affine& a, const Affine& b) { return {a.grad - b.grad, a.c - b.c}; }
  friend constexpr Affine operator*(double s, const Affine& a) { return {s * a.grad, s * a.c}; }
};

}  // namespace dsfem
