#include "dsfem/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dsfem/error.hpp"

namespace dsfem {

namespace {

Rule1D compute_gauss(int k) {
  Rule1D rule;
  rule.points.resize(k);
  rule.weights.resize(k);
  rule.exactness = 2 * k - 1;
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_k.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= k; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int n = 2; n <= k; ++n) {
      const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    dp = k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[k - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  if (k % 2 == 1) rule.points[k / 2] = 0.0;
  return rule;
}

struct RuleTables {
  std::array<Rule1D, kMaxGaussPoints + 1> line;
  std::array<Rule2D, kMaxGaussPoints + 1> square;

  RuleTables() {
    for (int k = 1; k <= kMaxGaussPoints; ++k) {
      line[k] = compute_gauss(k);
      Rule2D& sq = square[k];
      sq.exactness = 2 * k - 1;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          sq.points.push_back({line[k].points[i], line[k].points[j]});
          sq.weights.push_back(line[k].weights[i] * line[k].weights[j]);
        }
      }
    }
  }
};

const RuleTables& tables() {
  static const RuleTables t;
  return t;
}

void check_order(int k) {
  if (k < 1 || k > kMaxGaussPoints) {
    throw Error(ErrorCode::UnsupportedOrder,
                "Gauss rule with " + std::to_string(k) + " points (supported 1..30)");
  }
}

}  // namespace

const Rule1D& gauss_1d(int k) {
  check_order(k);
  return tables().line[k];
}

const Rule2D& gauss_square(int k) {
  check_order(k);
  return tables().square[k];
}

std::vector<CellQuadPoint> cell_quadrature(const Quad& quad, int k) {
  const Rule2D& rule = gauss_square(k);
  std::vector<CellQuadPoint> out(rule.points.size());
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const MapPoint mp = quad.map().forward(rule.points[q]);
    out[q] = {{mp.x, rule.points[q], mp.jacobian}, rule.weights[q] * mp.det};
  }
  return out;
}

std::vector<EdgeQuadPoint> edge_quadrature(const Quad& quad, int i, int k) {
  const Rule1D& rule = gauss_1d(k);
  const Edge& e = quad.edge(i);
  std::vector<EdgeQuadPoint> out(rule.points.size());
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double t = rule.points[q];
    const Point2 xh = reference_edge_point(i, t);
    out[q] = {{e.at(t), xh, quad.map().forward(xh).jacobian}, t, 0.5 * e.length * rule.weights[q]};
  }
  return out;
}

}  // namespace dsfem
