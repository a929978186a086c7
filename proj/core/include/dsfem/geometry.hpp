#pragma once

#include <array>
#include <cmath>

namespace dsfem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

using Point2 = Vec2;

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
/// Counter-clockwise rotation by 90 degrees: (a1, a2) -> (-a2, a1).
constexpr Vec2 rot90(const Vec2& a) { return {-a.y, a.x}; }
/// Scalar curl of a gradient: curl(phi) = (d2 phi, -d1 phi).
constexpr Vec2 curl_of_gradient(const Vec2& g) { return {g.y, -g.x}; }

/// Row-major 2x2 matrix.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr Vec2 operator*(const Vec2& v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  /// Inverse transpose, used to pull reference gradients back to E.
  constexpr Mat2 inverse_transpose() const {
    const double d = det();
    return {a22 / d, -a21 / d, -a12 / d, a11 / d};
  }
  constexpr Mat2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
};

/// Image of a reference point under the bilinear map with its Jacobian.
struct MapPoint {
  Point2 x;
  Mat2 jacobian;
  double det = 0.0;
};

/// F_E(xh) = a + b xh1 + c xh2 + d xh1 xh2 from [-1,1]^2 onto a quadrilateral.
class BilinearMap {
 public:
  BilinearMap() = default;
  /// Vertices in counter-clockwise order: images of (-1,-1), (1,-1), (1,1), (-1,1).
  explicit BilinearMap(const std::array<Point2, 4>& v);

  MapPoint forward(const Point2& xh) const;
  Point2 operator()(const Point2& xh) const { return forward(xh).x; }

  /// Damped Newton from the reference centre; stops once |F(xh) - x| <= tol.
  /// Throws NoConvergence after 50 iterations.
  Point2 inverse(const Point2& x, double tol) const;

  /// Piola transform (1/J) DF vh evaluated at xh.
  Vec2 piola(const Point2& xh, const Vec2& vh) const;

  bool is_affine(double tol = 1e-14) const;

  const Vec2& a() const { return a_; }
  const Vec2& b() const { return b_; }
  const Vec2& c() const { return c_; }
  const Vec2& d() const { return d_; }

 private:
  Vec2 a_, b_, c_, d_;
};

/// Edge record. Endpoints are ordered by increasing reference coordinate
/// along the edge, so the affine edge parameter t in [-1,1] agrees with the
/// reference square.
struct Edge {
  Point2 start;
  Point2 end;
  Point2 midpoint;
  Vec2 normal;   ///< unit outward normal
  Vec2 tangent;  ///< rot90(normal)
  double length = 0.0;

  Point2 at(double t) const { return start + 0.5 * (t + 1.0) * (end - start); }
};

/// A point of a cell known both physically and on the reference square,
/// with the map Jacobian there. Mapped shape functions need all three.
struct SamplePoint {
  Point2 x;
  Point2 xh;
  Mat2 jacobian;
};

/// Convex, nondegenerate quadrilateral.
///
/// Vertex k (0..3) is x_{v,13}, x_{v,23}, x_{v,24}, x_{v,14}: counter-clockwise
/// starting at the image of (-1,-1). Edge index 0..3 stands for e_1 (left,
/// xh1 = -1), e_2 (right, xh1 = 1), e_3 (bottom, xh2 = -1) and e_4 (top, xh2 = 1).
class Quad {
 public:
  static constexpr double kConvexityTol = 1e-12;
  static constexpr double kParallelTol = 1e-12;

  /// Throws NonConvex or Degenerate.
  explicit Quad(const std::array<Point2, 4>& ccw_vertices);

  const std::array<Point2, 4>& vertices() const { return vertices_; }
  const Point2& vertex(int k) const { return vertices_[k]; }
  const Edge& edge(int i) const { return edges_[i]; }
  const BilinearMap& map() const { return map_; }

  /// Diameter.
  double h() const { return h_; }
  /// Twice the smallest inradius among the four corner subtriangles.
  double rho() const { return rho_; }
  double area() const { return area_; }
  Point2 centroid() const { return centroid_; }
  /// sqrt(|E|), the length scale used to normalise shape functions.
  double scale() const { return std::sqrt(area_); }

  /// lambda_i(x) = -(x - x_i) . nu_i with x_i the midpoint of e_i.
  double lambda(int i, const Point2& x) const {
    return -dot(x - edges_[i].midpoint, edges_[i].normal);
  }
  Vec2 lambda_gradient(int i) const { return -edges_[i].normal; }

  bool parallel(int i, int j) const {
    return std::abs(cross(edges_[i].normal, edges_[j].normal)) <= kParallelTol;
  }

  /// Reference coordinates of x (Newton), tolerance 1e-13 h_E.
  Point2 to_reference(const Point2& x) const { return map_.inverse(x, 1e-13 * h_); }

  SamplePoint sample(const Point2& xh) const {
    const MapPoint mp = map_.forward(xh);
    return {mp.x, xh, mp.jacobian};
  }
  SamplePoint sample_physical(const Point2& x) const {
    const Point2 xh = to_reference(x);
    return {x, xh, map_.forward(xh).jacobian};
  }

 private:
  std::array<Point2, 4> vertices_;
  std::array<Edge, 4> edges_;
  BilinearMap map_;
  double h_ = 0.0, rho_ = 0.0, area_ = 0.0;
  Point2 centroid_;
};

/// Signed area of triangle (a, b, c), positive when counter-clockwise.
inline double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * cross(b - a, c - a);
}

/// Reference point on edge i at parameter t in [-1,1].
constexpr Point2 reference_edge_point(int i, double t) {
  switch (i) {
    case 0: return {-1.0, t};
    case 1: return {1.0, t};
    case 2: return {t, -1.0};
    default: return {t, 1.0};
  }
}

/// Endpoint vertex indices (start, end) of edge i.
constexpr std::array<int, 2> edge_vertices(int i) {
  constexpr std::array<std::array<int, 2>, 4> table{{{0, 3}, {1, 2}, {0, 1}, {3, 2}}};
  return table[i];
}

}  // namespace dsfem
