#include "dsfem/geometry.hpp"

#include <algorithm>
#include <string>

#include "dsfem/error.hpp"

namespace dsfem {

BilinearMap::BilinearMap(const std::array<Point2, 4>& v)
    : a_(0.25 * (v[0] + v[1] + v[2] + v[3])),
      b_(0.25 * (-v[0] + v[1] + v[2] - v[3])),
      c_(0.25 * (-v[0] - v[1] + v[2] + v[3])),
      d_(0.25 * (v[0] - v[1] + v[2] - v[3])) {}

MapPoint BilinearMap::forward(const Point2& xh) const {
  MapPoint out;
  out.x = a_ + xh.x * b_ + xh.y * c_ + (xh.x * xh.y) * d_;
  const Vec2 col1 = b_ + xh.y * d_;
  const Vec2 col2 = c_ + xh.x * d_;
  out.jacobian = {col1.x, col2.x, col1.y, col2.y};
  out.det = out.jacobian.det();
  return out;
}

Point2 BilinearMap::inverse(const Point2& x, double tol) const {
  Point2 xh{0.0, 0.0};
  MapPoint fp = forward(xh);
  double res = norm(fp.x - x);
  for (int it = 0; it < 50; ++it) {
    if (res <= tol) return xh;
    const Vec2 step = fp.jacobian.inverse() * (fp.x - x);
    double damping = 1.0;
    for (int k = 0; k < 30; ++k) {
      const Point2 trial = xh - damping * step;
      const MapPoint tp = forward(trial);
      const double tres = norm(tp.x - x);
      if (tres < res || k == 29) {
        xh = trial;
        fp = tp;
        res = tres;
        break;
      }
      damping *= 0.5;
    }
  }
  if (res <= tol) return xh;
  throw Error(ErrorCode::NoConvergence,
              "bilinear map inversion did not converge (residual " + std::to_string(res) + ")");
}

Vec2 BilinearMap::piola(const Point2& xh, const Vec2& vh) const {
  const MapPoint fp = forward(xh);
  return (fp.jacobian * vh) / fp.det;
}

bool BilinearMap::is_affine(double tol) const {
  const double s = std::max(norm(b_), norm(c_));
  return norm(d_) <= tol * s;
}

Quad::Quad(const std::array<Point2, 4>& v) : vertices_(v), map_(v) {
  for (const auto& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::Degenerate, "non-finite vertex coordinate");
    }
  }
  h_ = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) h_ = std::max(h_, norm(v[i] - v[j]));
  if (h_ <= 0.0) throw Error(ErrorCode::Degenerate, "quadrilateral collapsed to a point");

  // Subtriangle T_k omits vertex k; its vertices stay in ccw order.
  std::array<double, 4> sub{};
  for (int k = 0; k < 4; ++k) {
    sub[k] = signed_area(v[(k + 1) % 4], v[(k + 2) % 4], v[(k + 3) % 4]);
  }
  const double tol = kConvexityTol * h_ * h_;
  for (int k = 0; k < 4; ++k) {
    if (sub[k] < -tol) {
      throw Error(ErrorCode::NonConvex,
                  "corner subtriangle " + std::to_string(k) + " has negative orientation");
    }
  }
  for (int k = 0; k < 4; ++k) {
    if (sub[k] <= tol) {
      throw Error(ErrorCode::Degenerate,
                  "three vertices are collinear (subtriangle " + std::to_string(k) + ")");
    }
  }

  area_ = 0.5 * (sub[0] + sub[1] + sub[2] + sub[3]);
  // Area centroid from the two triangles (v0, v1, v2) and (v0, v2, v3).
  const double a1 = signed_area(v[0], v[1], v[2]);
  const double a2 = signed_area(v[0], v[2], v[3]);
  centroid_ = (a1 * ((v[0] + v[1] + v[2]) / 3.0) + a2 * ((v[0] + v[2] + v[3]) / 3.0)) / (a1 + a2);

  double min_inradius = h_;
  for (int k = 0; k < 4; ++k) {
    const Point2& p = v[(k + 1) % 4];
    const Point2& q = v[(k + 2) % 4];
    const Point2& r = v[(k + 3) % 4];
    const double perimeter = norm(q - p) + norm(r - q) + norm(p - r);
    min_inradius = std::min(min_inradius, 2.0 * sub[k] / perimeter);
  }
  rho_ = 2.0 * min_inradius;

  for (int i = 0; i < 4; ++i) {
    const auto [s, e] = edge_vertices(i);
    Edge& ed = edges_[i];
    ed.start = v[s];
    ed.end = v[e];
    ed.midpoint = 0.5 * (ed.start + ed.end);
    const Vec2 d = ed.end - ed.start;
    ed.length = norm(d);
    Vec2 nrm{d.y / ed.length, -d.x / ed.length};
    if (dot(nrm, centroid_ - ed.midpoint) > 0.0) nrm = -nrm;
    ed.normal = nrm;
    ed.tangent = rot90(nrm);
  }
}

}  // namespace dsfem
