#include <doctest.h>

#include "dsfem/error.hpp"
#include "dsfem/mesh.hpp"

using namespace dsfem;

TEST_SUITE("mesh") {

TEST_CASE("entity counts") {
  const Mesh m = generate_mesh(MeshFamily::Squares, 2);
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_edges() == 12);
  CHECK(m.num_cells() == 4);
  for (int c = 0; c < 4; ++c) CHECK(m.quad(c).area() == doctest::Approx(0.25));

  for (auto family : {MeshFamily::Squares, MeshFamily::Trapezoids, MeshFamily::Perturbed}) {
    for (int n : {2, 4, 8, 12, 16, 24, 32, 64}) {
      const Mesh mesh = generate_mesh(family, n);
      CHECK(mesh.num_cells() == n * n);
      CHECK(mesh.num_vertices() == (n + 1) * (n + 1));
      CHECK(mesh.num_edges() == 2 * n * (n + 1));
      CHECK(mesh.num_vertices() - mesh.num_edges() + mesh.num_cells() == 1);
      int boundary = 0;
      for (const auto& e : mesh.edges()) {
        boundary += e.boundary;
        CHECK((e.cells[1] == -1) == e.boundary);
        CHECK(e.vertices[0] < e.vertices[1]);
      }
      CHECK(boundary == 4 * n);
      double area = 0.0;
      for (int c = 0; c < mesh.num_cells(); ++c) area += mesh.quad(c).area();
      CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("trapezoid family") {
  const Mesh m = generate_mesh(MeshFamily::Trapezoids, 4);
  const double h = 0.25;
  for (int c = 0; c < m.num_cells(); ++c) {
    const Quad& q = m.quad(c);
    CHECK(q.parallel(0, 1));
    CHECK_FALSE(q.parallel(2, 3));
    std::array<double, 2> len{q.edge(0).length, q.edge(1).length};
    std::sort(len.begin(), len.end());
    CHECK(len[0] == doctest::Approx(0.75 * h));
    CHECK(len[1] == doctest::Approx(1.25 * h));
  }
}

TEST_CASE("perturbed family has no parallel opposite edges") {
  const Mesh m = generate_mesh(MeshFamily::Perturbed, 4);
  for (int c = 0; c < m.num_cells(); ++c) {
    const Quad& q = m.quad(c);
    CHECK(std::abs(cross(q.edge(0).normal, q.edge(1).normal)) > 1e-6);
    CHECK(std::abs(cross(q.edge(2).normal, q.edge(3).normal)) > 1e-6);
  }
  CHECK(no_parallel_opposite_edges(m));
  CHECK(mesh_quality(m) > 0.2);
}

TEST_CASE("quality") {
  for (int n : {1, 3, 8}) CHECK(mesh_quality(generate_mesh(MeshFamily::Squares, n)) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  for (auto family : {MeshFamily::Trapezoids, MeshFamily::Perturbed}) {
    const double q4 = mesh_quality(generate_mesh(family, 4));
    for (int n : {8, 16}) CHECK(std::abs(mesh_quality(generate_mesh(family, n)) - q4) <= 1e-12);
  }
  const Mesh single({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2, 3}});
  CHECK(mesh_quality(single) == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("parity precondition") {
  CHECK_THROWS_AS(generate_mesh(MeshFamily::Trapezoids, 3), Error);
  CHECK_THROWS_AS(generate_mesh(MeshFamily::Squares, 0), Error);
  try {
    generate_mesh(MeshFamily::Perturbed, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadSubdivision);
  }
}

TEST_CASE("save and load round trip") {
  for (auto family : {MeshFamily::Squares, MeshFamily::Trapezoids, MeshFamily::Perturbed}) {
    const Mesh m = generate_mesh(family, 4);
    const Mesh back = load_mesh(save_mesh(m));
    CHECK(back == m);
    CHECK(back.num_edges() == m.num_edges());
  }
}

TEST_CASE("malformed mesh text") {
  try {
    load_mesh("4 4 1\n0 0\n1 0\n1 1\n0 1\n0 1 2 3 0\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 6);
  }
  try {
    load_mesh("# comment\n4 5 1\n0 0\n1 0\n1 1\n0 1\n0 1 2 3\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_mesh("4 4 1\n0 0\n1 x\n1 1\n0 1\n0 1 2 3\n"), Error);
  CHECK_THROWS_AS(load_mesh("4 4 1\n0 0\n1 0\n1 1\n0 1\n0 1 2 9\n"), Error);
}

TEST_CASE("half-edge sharing is rejected") {
  // Left cell spans y in [0, 2]; two right cells meet it at (1, 1).
  const std::vector<Point2> v{{0, 0}, {1, 0}, {1, 2}, {0, 2}, {2, 0}, {2, 1}, {1, 1}, {2, 2}};
  try {
    Mesh m(v, {{0, 1, 2, 3}, {1, 4, 5, 6}, {6, 5, 7, 2}});
    FAIL("expected NonConforming");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConforming);
  }
}

TEST_CASE("edge orientation bookkeeping") {
  const Mesh m = generate_mesh(MeshFamily::Trapezoids, 4);
  for (int c = 0; c < m.num_cells(); ++c) {
    for (int i = 0; i < 4; ++i) {
      const auto& e = m.edges()[m.cell_edges(c)[i]];
      const auto [s, t] = edge_vertices(i);
      const int a = m.cells()[c][s], b = m.cells()[c][t];
      CHECK(m.edge_aligned(c, i) == (a == e.vertices[0] && b == e.vertices[1]));
    }
  }
}

}  // TEST_SUITE
