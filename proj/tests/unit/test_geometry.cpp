#include <doctest.h>

#include <random>

#include "dsfem/analysis.hpp"
#include "dsfem/error.hpp"
#include "dsfem/geometry.hpp"
#include "dsfem/quadrature.hpp"
#include "oracles.hpp"

using namespace dsfem;

namespace {

const Quad unit_square({Point2{0, 0}, {1, 0}, {1, 1}, {0, 1}});
const Quad trapezoid({Point2{0, 0}, {4, 0}, {3.5, 2}, {0.5, 2}});

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("unit square metrics") {
  CHECK(unit_square.h() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(unit_square.area() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit_square.edge(0).normal.x == doctest::Approx(-1.0));
  CHECK(unit_square.edge(0).normal.y == doctest::Approx(0.0));
  CHECK(unit_square.rho() == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(unit_square.rho() / unit_square.h() - (std::sqrt(2.0) - 1.0)) <= 1e-12);
}

TEST_CASE("rho against an inscribed circle search") {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 5; ++s) {
    const Quad q = random_convex_quad(rng);
    double smallest = 1e300;
    for (int k = 0; k < 4; ++k) {
      const Point2 a = q.vertex(k), b = q.vertex((k + 1) % 4), c = q.vertex((k + 3) % 4);
      smallest = std::min(smallest, oracle::inscribed_radius_search({a.x, a.y}, {b.x, b.y}, {c.x, c.y}));
    }
    CHECK(q.rho() == doctest::Approx(2.0 * smallest).epsilon(1e-8));
    CHECK(q.rho() <= q.h());
  }
}

TEST_CASE("invalid quadrilaterals") {
  CHECK(code_of([] { Quad({Point2{0, 0}, {1, 0}, {1, 1}, {2, 2}}); }) == ErrorCode::NonConvex);
  CHECK(code_of([] { Quad({Point2{0, 0}, {1, 0}, {2, 0}, {0, 1}}); }) == ErrorCode::Degenerate);
  CHECK(code_of([] { Quad({Point2{0, 0}, {0, 1}, {1, 1}, {1, 0}}); }) == ErrorCode::NonConvex);
}

TEST_CASE("edge distance functions") {
  CHECK(unit_square.lambda(0, {0.3, 0.7}) == doctest::Approx(0.3));
  CHECK(trapezoid.lambda(2, {1, 1}) == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  for (int s = 0; s < 20; ++s) {
    const Quad q = random_convex_quad(rng);
    for (int i = 0; i < 4; ++i) {
      const Edge& e = q.edge(i);
      CHECK(std::abs(dot(e.tangent, e.normal)) <= 1e-15);
      CHECK(norm(e.tangent) == doctest::Approx(1.0).epsilon(1e-15));
      for (int k = 0; k <= 20; ++k) {
        CHECK(std::abs(q.lambda(i, e.at(-1.0 + 0.1 * k))) <= 1e-13 * q.h());
      }
      CHECK(q.lambda(i, q.centroid()) > 0.0);
    }
  }
}

TEST_CASE("bilinear map") {
  const MapPoint m = unit_square.map().forward({0.2, -0.6});
  CHECK(m.x.x == doctest::Approx(0.6));
  CHECK(m.x.y == doctest::Approx(0.2));
  CHECK(m.det == doctest::Approx(0.25));
  const Point2 c = trapezoid.map()({0, 0});
  CHECK(c.x == doctest::Approx(2.0));
  CHECK(c.y == doctest::Approx(1.0));
  const Point2 v = trapezoid.map()({-1, -1});
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);

  // J is affine in xh: midpoint value is the average of the corner values.
  const double j0 = trapezoid.map().forward({-1, 0.3}).det, j1 = trapezoid.map().forward({1, 0.3}).det;
  CHECK(trapezoid.map().forward({0, 0.3}).det == doctest::Approx(0.5 * (j0 + j1)));
}

TEST_CASE("inverse map") {
  const Point2 xh = unit_square.to_reference({0.25, 0.75});
  CHECK(xh.x == doctest::Approx(-0.5));
  CHECK(xh.y == doctest::Approx(0.5));
  const Point2 top = trapezoid.to_reference(trapezoid.vertex(2));
  CHECK(top.x == doctest::Approx(1.0));
  CHECK(top.y == doctest::Approx(1.0));
  const Point2 back = trapezoid.to_reference(trapezoid.map()({0.3, -0.2}));
  CHECK(std::abs(back.x - 0.3) <= 1e-12);
  CHECK(std::abs(back.y + 0.2) <= 1e-12);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Quad q = random_convex_quad(rng);
    for (int k = 0; k < 100; ++k) {
      const Point2 p{u(rng), u(rng)};
      const Point2 r = q.to_reference(q.map()(p));
      worst = std::max({worst, std::abs(r.x - p.x), std::abs(r.y - p.y)});
    }
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("Piola map") {
  const Vec2 v = unit_square.map().piola({0.1, 0.4}, {1, 0});
  CHECK(v.x == doctest::Approx(2.0));
  CHECK(v.y == doctest::Approx(0.0));
  const Vec2 z = trapezoid.map().piola({0.1, 0.4}, {0, 0});
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);
}

TEST_CASE("Piola preserves edge fluxes") {
  std::mt19937_64 rng(3);
  const auto field = [](const Point2& p) { return Vec2{1.0 + p.x * p.y + p.y * p.y, std::sin(p.x) - 0.5 * p.y}; };
  for (int s = 0; s < 10; ++s) {
    const Quad q = random_convex_quad(rng);
    for (int i = 0; i < 4; ++i) {
      const Point2 nh = i == 0 ? Point2{-1, 0} : i == 1 ? Point2{1, 0} : i == 2 ? Point2{0, -1} : Point2{0, 1};
      const auto& g = gauss_1d(12);
      double ref = 0.0, phys = 0.0;
      for (std::size_t k = 0; k < g.points.size(); ++k) ref += g.weights[k] * dot(field(reference_edge_point(i, g.points[k])), nh);
      for (const auto& p : edge_quadrature(q, i, 12)) phys += p.weight * dot(q.map().piola(p.xh, field(p.xh)), q.edge(i).normal);
      CHECK(std::abs(phys - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("parallel edges") {
  CHECK(unit_square.parallel(0, 1));
  CHECK(unit_square.parallel(2, 3));
  CHECK(trapezoid.parallel(2, 3));
  CHECK_FALSE(trapezoid.parallel(0, 1));
}

}  // TEST_SUITE
