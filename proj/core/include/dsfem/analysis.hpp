#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dsfem/galerkin.hpp"
#include "dsfem/hybrid.hpp"
#include "dsfem/mesh.hpp"
#include "dsfem/sparse.hpp"

namespace dsfem {

/// p, u = -grad p and f = -div grad p of a manufactured solution.
struct ExactSolution {
  ScalarField p;
  VectorField grad_p;
  ScalarField f;
};

/// p = sin(pi x) sin(pi y), f = 2 pi^2 p.
ExactSolution sine_solution();

struct ScalarErrors {
  double l2 = 0.0;
  double h1 = 0.0;  ///< seminorm
};

/// ||p - p_h||_0 and |p - p_h|_1 for a global nodal vector. k <= 0 selects r+5.
ScalarErrors galerkin_errors(const DSSpace& space, const std::vector<double>& nodal, const ScalarField& p,
                             const VectorField& grad_p, int k = 0);

struct MixedErrors {
  double p = 0.0;
  double u = 0.0;
  double div = 0.0;
};

/// ||p - p_h||, ||u - u_h|| and ||div(u - u_h)|| with u = -grad p, div u = f.
MixedErrors mixed_errors(const HybridSystem& system, const MixedSolution& solution, const ExactSolution& exact,
                         int k = 0);

/// rate_k = log(e_{k-1}/e_k) / log(n_k/n_{k-1}); the first entry is empty.
/// Throws NonPositiveError for an error <= 0 and InvalidArgument for
/// mismatched lengths or non-increasing n.
std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors, const std::vector<int>& ns);

enum class DofKind { Serendipity, Tensor };

/// (r^2 - r + 4) n^2 / 2 + 2 r n + 1 for DS_r, (n r + 1)^2 for Q_r.
long long dof_count(int r, int n, DofKind kind);

/// Random convex quadrilateral with rho/h >= 0.1, arbitrary position, size and rotation.
Quad random_convex_quad(std::mt19937_64& rng);
/// Random trapezoid: one pair of opposite edges is parallel, which pair depends
/// on the randomly chosen starting vertex.
Quad random_trapezoid(std::mt19937_64& rng);

struct StudyOptions {
  SolverKind solver = SolverKind::Cholesky;
  double rel_tol = 1e-12;
  int quad_points = 0;
};

struct GalerkinRow {
  std::string family;
  std::string element;  ///< "ds" or "ds-map"
  std::string variant;  ///< supplement kind
  int r = 0;
  int n = 0;
  long long dofs = 0;
  double e_l2 = 0.0, e_h1 = 0.0;
  std::optional<double> rate_l2, rate_h1;
  int iterations = 0;
  double residual = 0.0;
};

struct MixedRow {
  std::string family;
  std::string variant;  ///< "full" or "reduced"
  int r = 0;
  int n = 0;
  long long dofs = 0;  ///< multiplier unknowns
  double e_p = 0.0, e_u = 0.0, e_div = 0.0;
  std::optional<double> rate_p, rate_u, rate_div;
  int iterations = 0;
  double residual = 0.0;
};

/// Solves the sine problem on generate_mesh(family, n) for each n. Throws
/// NoConvergence if the linear solve does not reach the tolerance.
std::vector<GalerkinRow> galerkin_study(MeshFamily family, int r, const std::vector<int>& ns,
                                        const SupplementChoice& choice, const StudyOptions& options = {});
std::vector<MixedRow> mixed_study(MeshFamily family, int r, MixedVariant variant, const std::vector<int>& ns,
                                  const SupplementChoice& choice, const StudyOptions& options = {});

}  // namespace dsfem
