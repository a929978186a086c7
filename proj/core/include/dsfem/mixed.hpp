#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dsfem/geometry.hpp"
#include "dsfem/serendipity.hpp"

namespace dsfem {

enum class MixedVariant {
  Full,     ///< paired with P_r
  Reduced,  ///< paired with P_{r-1}
};

std::string_view to_string(MixedVariant v);

/// dim V_r: (r+1)(r+2) + 2, plus r+1 for the full space.
constexpr int mixed_dimension(int r, MixedVariant v) {
  return (r + 1) * (r + 2) + 2 + (v == MixedVariant::Full ? r + 1 : 0);
}

/// A vector value with its divergence.
struct VecDiv {
  Vec2 v;
  double div = 0.0;
};

/// Legendre polynomial P_k on [-1, 1].
double legendre(int k, double t);

/// Direct mixed element V_r(E) with a DoF-dual basis.
///
/// Spanning set: curl of scaled monomials of degree 1..r+1, (x - c) times
/// homogeneous monomials of degree 0..s, and the curls of the two DS_{r+1}
/// supplements. DoFs, in order: int_{e_i} psi . nu_i P_k(t) for i = 0..3,
/// k = 0..r; int_E psi . grad q for q of degree 1..s; int_E psi . curl(b m)
/// with b = lambda_1 lambda_2 lambda_3 lambda_4 and m of degree <= r-3.
class MixedElement {
 public:
  struct Options {
    /// Negative control: flips the sign of the first component of the first
    /// supplement while still reporting zero divergence.
    bool corrupt_supplement = false;
    /// Gauss points per axis for the cell DoFs; 0 selects r+9, enough for the
    /// rational supplements.
    int cell_points = 0;
  };

  /// Throws UnsupportedOrder (r < 1) or SingularDoFMatrix.
  MixedElement(const Quad& quad, int r, MixedVariant variant, const SupplementChoice& choice,
               Options options);
  MixedElement(const Quad& quad, int r, MixedVariant variant, const SupplementChoice& choice)
      : MixedElement(quad, r, variant, choice, Options{}) {}

  int r() const { return r_; }
  /// Degree of the paired scalar space.
  int s() const { return variant_ == MixedVariant::Full ? r_ : r_ - 1; }
  MixedVariant variant() const { return variant_; }
  int dimension() const { return mixed_dimension(r_, variant_); }
  const Quad& quad() const { return quad_; }
  const DirectionFunctions& directions() const { return dirs_; }

  int num_edge_dofs() const { return 4 * (r_ + 1); }
  /// Index of the DoF int_{e_i} psi . nu_i P_k.
  int edge_dof(int i, int k) const { return i * (r_ + 1) + k; }

  /// Spanning functions (in the order above) at p.
  void eval_spanning(const SamplePoint& p, std::vector<VecDiv>& out) const;
  /// DoF-dual basis at p.
  void eval_basis(const SamplePoint& p, std::vector<VecDiv>& out) const;
  std::vector<VecDiv> eval_basis(const Point2& x) const;

  /// sigma_{r,1}, sigma_{r,2}: curls of the DS_{r+1} supplements (unscaled).
  std::array<VecDiv, 2> supplements(const SamplePoint& p) const;

  /// DoF values of a vector field, i.e. the coefficients of its projection
  /// onto V_r in the dual basis. Zero point counts select the defaults
  /// (r+2 per edge, the element's cell order).
  Eigen::VectorXd dofs_of(const std::function<Vec2(const SamplePoint&)>& v, int edge_points = 0,
                          int cell_points = 0) const;

  /// S_ij = DoF_i(spanning_j).
  const Eigen::MatrixXd& dof_matrix() const { return dof_matrix_; }
  /// Column k holds the spanning-set coefficients of basis function k.
  const Eigen::MatrixXd& coefficients() const { return coeff_; }

  /// Basis of the paired scalar space P_s(E).
  const MonomialBasis& scalar_basis() const { return scalar_; }

 private:
  Quad quad_;
  int r_;
  MixedVariant variant_;
  SupplementChoice choice_;
  Options options_;
  DirectionFunctions dirs_;
  MonomialBasis curl_mono_;
  MonomialBasis x_mono_;
  MonomialBasis grad_mono_;
  MonomialBasis bubble_mono_;
  MonomialBasis scalar_;
  Eigen::MatrixXd dof_matrix_;
  Eigen::MatrixXd coeff_;
};

}  // namespace dsfem
