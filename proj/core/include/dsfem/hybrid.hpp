#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dsfem/galerkin.hpp"
#include "dsfem/mesh.hpp"
#include "dsfem/mixed.hpp"
#include "dsfem/sparse.hpp"

namespace dsfem {

/// Links local edge DoF `local` to multiplier `global` with orientation `sign`.
struct MultiplierLink {
  int local = 0;
  int global = 0;
  double sign = 1.0;
};

/// Hybridized mixed system for -div(a grad p) = f, u = -a grad p, p = g on
/// the boundary. Multipliers live on interior edges, r+1 per edge, as
/// coefficients of Legendre polynomials in the global edge parameter (lower
/// vertex index at t = -1).
struct HybridSystem {
  int r = 0;
  MixedVariant variant = MixedVariant::Reduced;
  std::vector<MixedElement> elements;
  std::vector<int> edge_offset;  ///< first multiplier of each edge, -1 on the boundary
  int num_multipliers = 0;
  std::vector<std::vector<MultiplierLink>> links;
  /// Inverse of the local saddle matrix [[A, -B^T], [-B, 0]].
  std::vector<Eigen::MatrixXd> local_inverse;
  /// Local (u, p) for zero multipliers.
  std::vector<Eigen::VectorXd> particular;
  CsrMatrix schur;
  std::vector<double> rhs;
};

/// quad_points <= 0 selects r+5 per axis in cells and on edges.
/// Throws SingularLocalBlock or propagates element errors.
HybridSystem assemble_hybrid_mixed(const Mesh& mesh, int r, MixedVariant variant, const SupplementChoice& choice,
                                   const EllipticProblem& problem, int quad_points = 0,
                                   MixedElement::Options options = {});

struct MixedSolution {
  std::vector<Eigen::VectorXd> u;  ///< per cell, in the element's dual basis
  std::vector<Eigen::VectorXd> p;  ///< per cell, in scalar_basis()
};

MixedSolution recover_fields(const HybridSystem& system, const std::vector<double>& multipliers);

}  // namespace dsfem
