#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsfem/geometry.hpp"

namespace dsfem {

/// The three experiment mesh sequences on the unit square.
enum class MeshFamily {
  Squares,     ///< T1: uniform squares
  Trapezoids,  ///< T2: one pair of parallel (vertical) sides, 0.75h and 1.25h
  Perturbed,   ///< T3: no pair of parallel opposite edges
};

std::string_view to_string(MeshFamily f);
/// Accepts "t1", "t2", "t3" (case-insensitive). Throws InvalidArgument.
MeshFamily parse_family(std::string_view s);

struct MeshEdge {
  std::array<int, 2> vertices{};      ///< lower global index first
  std::array<int, 2> cells{-1, -1};   ///< cells[1] == -1 on the boundary
  std::array<int, 2> local{-1, -1};   ///< local edge index (0..3) in each cell
  bool boundary = false;
};

/// Conforming quadrilateral mesh. Cells list vertices counter-clockwise,
/// starting at the vertex that plays x_{v,13} in that cell.
class Mesh {
 public:
  /// Builds edges and cell geometry. Throws NonConforming, NonConvex,
  /// Degenerate or InvalidArgument (bad vertex index).
  Mesh(std::vector<Point2> vertices, std::vector<std::array<int, 4>> cells,
       std::optional<MeshFamily> family = std::nullopt, int n = 0);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 4>>& cells() const { return cells_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  /// Global edge index of each local edge of cell c.
  const std::array<int, 4>& cell_edges(int c) const { return cell_edges_[c]; }
  const Quad& quad(int c) const { return quads_[c]; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// True if local edge i of cell c runs in the same direction as the global
  /// edge (lower vertex index to higher).
  bool edge_aligned(int c, int i) const;

  std::optional<MeshFamily> family() const { return family_; }
  int subdivisions() const { return n_; }
  /// Largest cell diameter.
  double h() const;

  /// Compares vertex coordinates and cell connectivity exactly.
  friend bool operator==(const Mesh& a, const Mesh& b) {
    return a.vertices_ == b.vertices_ && a.cells_ == b.cells_;
  }

 private:
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 4>> cells_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 4>> cell_edges_;
  std::vector<Quad> quads_;
  std::optional<MeshFamily> family_;
  int n_ = 0;
};

/// n x n mesh of the unit square. T2 and T3 require even n (BadSubdivision).
Mesh generate_mesh(MeshFamily family, int n);

/// min over cells of rho_E / h_E.
double mesh_quality(const Mesh& mesh);

/// True if no cell has a parallel pair of opposite edges.
bool no_parallel_opposite_edges(const Mesh& mesh);

/// Text format: `nv ne nc`, nv lines `x y`, nc lines `v0 v1 v2 v3`;
/// `#` starts a comment. Coordinates are written in shortest round-trip form.
std::string save_mesh(const Mesh& mesh);
/// Throws ParseError (with line number) or NonConforming.
Mesh load_mesh(std::string_view text);

}  // namespace dsfem
