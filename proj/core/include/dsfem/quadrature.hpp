#pragma once

#include <vector>

#include "dsfem/geometry.hpp"

namespace dsfem {

/// Gauss-Legendre rule on [-1, 1].
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness = 0;  ///< integrates polynomials of degree <= exactness exactly
};

/// Tensor Gauss-Legendre rule on [-1, 1]^2.
struct Rule2D {
  std::vector<Point2> points;
  std::vector<double> weights;
  int exactness = 0;
};

constexpr int kMaxGaussPoints = 30;

/// k-point Gauss-Legendre rule, 1 <= k <= 30. Rules are computed once and cached.
const Rule1D& gauss_1d(int k);
/// k x k tensor rule on the reference square.
const Rule2D& gauss_square(int k);

/// Quadrature point mapped onto a cell: physical point, reference point, the
/// map Jacobian there, and the physical weight w_q * J(xh_q).
struct CellQuadPoint : SamplePoint {
  double weight = 0.0;
};

/// Tensor rule pushed forward through the bilinear map of a quad.
std::vector<CellQuadPoint> cell_quadrature(const Quad& quad, int k);

/// Quadrature point on edge e_i of a quad; weight already includes |e_i|/2.
struct EdgeQuadPoint : SamplePoint {
  double t = 0.0;  ///< edge parameter in [-1, 1]
  double weight = 0.0;
};

std::vector<EdgeQuadPoint> edge_quadrature(const Quad& quad, int i, int k);

/// sum_q f(x_q) J(xh_q) w_q over the k x k rule. f may return any type with
/// `+=` and scalar multiplication (double, Vec2, Eigen vectors).
template <class F>
auto integrate_cell(const Quad& quad, F&& f, int k) {
  const auto pts = cell_quadrature(quad, k);
  using R = std::decay_t<decltype(f(pts.front().x))>;
  R acc = pts.front().weight * f(pts.front().x);
  for (std::size_t q = 1; q < pts.size(); ++q) acc += pts[q].weight * f(pts[q].x);
  return acc;
}

/// Integral of g over edge e_i with the k-point rule mapped affinely onto it.
template <class G>
auto integrate_edge(const Quad& quad, int i, G&& g, int k) {
  const auto pts = edge_quadrature(quad, i, k);
  using R = std::decay_t<decltype(g(pts.front().x))>;
  R acc = pts.front().weight * g(pts.front().x);
  for (std::size_t q = 1; q < pts.size(); ++q) acc += pts[q].weight * g(pts[q].x);
  return acc;
}

}  // namespace dsfem
