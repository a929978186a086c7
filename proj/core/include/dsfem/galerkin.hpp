#pragma once

#include <functional>
#include <vector>

#include "dsfem/geometry.hpp"
#include "dsfem/mesh.hpp"
#include "dsfem/serendipity.hpp"
#include "dsfem/sparse.hpp"

namespace dsfem {

using ScalarField = std::function<double(const Point2&)>;
using VectorField = std::function<Vec2(const Point2&)>;
using TensorField = std::function<Mat2(const Point2&)>;

/// Global DS_r space on a mesh: one element per cell plus the shared-node
/// numbering. Global indices: vertices, then r-1 nodes per edge running from
/// the lower vertex index to the higher, then the cell nodes cell by cell.
struct DSSpace {
  int r = 0;
  int num_dofs = 0;
  std::vector<DSElement> elements;
  std::vector<std::vector<int>> cell_dofs;  ///< local node -> global index
  std::vector<Point2> positions;
  std::vector<char> on_boundary;
};

/// Throws NonConforming if two cells disagree on a shared node position
/// (tolerance 1e-12 h), or propagates element construction errors.
DSSpace build_ds_space(const Mesh& mesh, int r, const SupplementChoice& choice);

/// -div(a grad p) = f with p = g on the boundary.
struct EllipticProblem {
  ScalarField f;
  ScalarField g;   ///< empty means homogeneous
  TensorField a;   ///< empty means identity
};

/// Stiffness and load restricted to the free (non-boundary) nodes.
struct GalerkinSystem {
  DSSpace space;
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::vector<int> free_index;          ///< global -> free index, -1 on the boundary
  std::vector<double> boundary_values;  ///< g at boundary nodes, 0 elsewhere
};

/// quad_points <= 0 selects r+5 Gauss points per axis.
GalerkinSystem assemble_galerkin(const Mesh& mesh, int r, const SupplementChoice& choice,
                                 const EllipticProblem& problem, int quad_points = 0);

/// Global nodal vector from a solution on the free nodes.
std::vector<double> expand_solution(const GalerkinSystem& system, const std::vector<double>& free_values);

/// Nodal interpolant of f in the global space.
std::vector<double> interpolate(const DSSpace& space, const ScalarField& f);

}  // namespace dsfem
