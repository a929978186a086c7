#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct P {
  double x, y;
};

// Gaussian elimination with partial pivoting on a dense copy.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Largest inscribed circle of a triangle by bisection on the radius: r is
// feasible when the three edge lines, each moved inward by r, still bound a
// triangle of the original orientation.
inline double inscribed_radius_search(P a, P b, P c) {
  auto cross = [](double ux, double uy, double vx, double vy) { return ux * vy - uy * vx; };
  const double orient = cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y) > 0 ? 1.0 : -1.0;
  // Line through u, v moved by r toward the interior: n . x = d.
  struct Line {
    double nx, ny, d;
  };
  auto shifted = [&](P u, P v, double r) {
    const double len = std::hypot(v.x - u.x, v.y - u.y);
    const double nx = -orient * (v.y - u.y) / len, ny = orient * (v.x - u.x) / len;
    return Line{nx, ny, nx * u.x + ny * u.y + r};
  };
  auto meet = [&](const Line& l, const Line& m) {
    const double det = cross(l.nx, l.ny, m.nx, m.ny);
    return P{(l.d * m.ny - m.d * l.ny) / det, (l.nx * m.d - m.nx * l.d) / det};
  };
  auto feasible = [&](double r) {
    const Line lab = shifted(a, b, r), lbc = shifted(b, c, r), lca = shifted(c, a, r);
    const P p = meet(lab, lbc);
    return lca.nx * p.x + lca.ny * p.y >= lca.d;
  };
  double lo = 0.0, hi = std::hypot(b.x - a.x, b.y - a.y);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Composite Simpson rule on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Polynomial in two variables with coefficients c[i][j] of x^i y^j.
struct Poly2 {
  std::vector<std::vector<double>> c;

  double operator()(double x, double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c[i].size(); ++j) s += c[i][j] * std::pow(x, i) * std::pow(y, j);
    }
    return s;
  }
  // Exact integral over [x0,x1] x [y0,y1].
  double integrate_box(double x0, double x1, double y0, double y1) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        const double ix = (std::pow(x1, i + 1) - std::pow(x0, i + 1)) / (i + 1);
        const double iy = (std::pow(y1, j + 1) - std::pow(y0, j + 1)) / (j + 1);
        s += c[i][j] * ix * iy;
      }
    }
    return s;
  }
};

// Count of DS_r nodes on an n x n quadrilateral grid by entity enumeration:
// one per vertex, r-1 per edge, (r-2)(r-3)/2 per cell.
inline long long entity_node_count(int r, int n) {
  const long long vertices = static_cast<long long>(n + 1) * (n + 1);
  const long long edges = 2LL * n * (n + 1);
  const long long cells = static_cast<long long>(n) * n;
  return vertices + edges * (r - 1) + cells * ((r - 2) * (r - 3) / 2);
}

}  // namespace oracle
