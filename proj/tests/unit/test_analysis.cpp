#include <doctest.h>

#include <cmath>

#include "dsfem/analysis.hpp"
#include "dsfem/error.hpp"
#include "oracles.hpp"

using namespace dsfem;

TEST_SUITE("analysis") {

TEST_CASE("convergence rates") {
  const auto r = convergence_rates({1.0, 0.25}, {4, 8});
  REQUIRE(r.size() == 2);
  CHECK_FALSE(r[0].has_value());
  CHECK(*r[1] == doctest::Approx(2.0));
  CHECK(*convergence_rates({0.5, 0.5}, {4, 8})[1] == doctest::Approx(0.0));
  CHECK(*convergence_rates({1.101e-06, 3.486e-07}, {12, 16})[1] == doctest::Approx(4.00).epsilon(0.005));
  const auto scaled = convergence_rates({7.0, 7.0 / 16.0}, {4, 8});
  CHECK(*scaled[1] == doctest::Approx(4.0));
  CHECK(convergence_rates({1.0}, {8}).size() == 1);
}

TEST_CASE("convergence rate errors") {
  try {
    convergence_rates({1.0, 0.0}, {4, 8});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveError);
  }
  CHECK_THROWS_AS(convergence_rates({1.0, 0.5}, {8, 4}), Error);
  CHECK_THROWS_AS(convergence_rates({1.0, 0.5}, {4}), Error);
}

TEST_CASE("dof counts") {
  CHECK(dof_count(2, 8, DofKind::Serendipity) == 225);
  CHECK(dof_count(2, 8, DofKind::Tensor) == 289);
  const double ratio = static_cast<double>(dof_count(4, 16, DofKind::Serendipity)) / dof_count(4, 16, DofKind::Tensor);
  CHECK(ratio == doctest::Approx(2177.0 / 4225.0));
  for (int r = 2; r <= 5; ++r) {
    for (int n : {1, 2, 4, 8}) {
      const long long formula = dof_count(r, n, DofKind::Serendipity);
      CHECK(formula == oracle::entity_node_count(r, n));
      CHECK(build_ds_space(generate_mesh(MeshFamily::Squares, n), r, SupplementChoice::geometric()).num_dofs == formula);
    }
  }
}

TEST_CASE("galerkin error on the square mesh") {
  const auto rows = galerkin_study(MeshFamily::Squares, 2, {8}, SupplementChoice::geometric());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].e_l2 == doctest::Approx(2.457e-4).epsilon(0.02));
  CHECK(rows[0].dofs == 225);
  CHECK_FALSE(rows[0].rate_l2.has_value());
}

TEST_CASE("galerkin error is close to the interpolation error") {
  const auto exact = sine_solution();
  const auto rows = galerkin_study(MeshFamily::Perturbed, 3, {8}, SupplementChoice::geometric());
  const DSSpace space = build_ds_space(generate_mesh(MeshFamily::Perturbed, 8), 3, SupplementChoice::geometric());
  const auto interp = galerkin_errors(space, interpolate(space, exact.p), exact.p, exact.grad_p);
  CHECK(rows[0].e_h1 <= 3.0 * interp.h1);
  CHECK(rows[0].e_l2 <= 3.0 * interp.l2);
}

TEST_CASE("exact nodal values of a polynomial give zero error") {
  const ScalarField p = [](const Point2& x) { return x.x * x.y + 2.0; };
  const VectorField g = [](const Point2& x) { return Vec2{x.y, x.x}; };
  const DSSpace space = build_ds_space(generate_mesh(MeshFamily::Trapezoids, 4), 2, SupplementChoice::geometric());
  const auto e = galerkin_errors(space, interpolate(space, p), p, g);
  CHECK(e.l2 <= 1e-12);
  CHECK(e.h1 <= 1e-11);
}

TEST_CASE("random quads are valid") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 200; ++k) {
    const Quad q = random_convex_quad(rng);
    CHECK(q.rho() / q.h() >= 0.1);
    const Quad t = random_trapezoid(rng);
    CHECK((t.parallel(0, 1) || t.parallel(2, 3)));
  }
}

}  // TEST_SUITE
