#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dsfem/geometry.hpp"
#include "dsfem/value_grad.hpp"

namespace dsfem {

/// How the two supplemental functions of DS_r are built.
enum class SupplementKind {
  Simple,     ///< R^simple with user-given xi, eta
  Geometric,  ///< R^simple with xi, eta taken from the edge normals
  Lemma,      ///< R~ = lambda_12 / (lambda_H - gamma_H), admits an explicit basis
  Mapped,     ///< supplements pulled back from the reference square
};

std::string_view to_string(SupplementKind k);
/// Accepts "simple", "geometric", "lemma", "mapped". Throws InvalidArgument.
SupplementKind parse_supplement(std::string_view s);

struct SupplementChoice {
  SupplementKind kind = SupplementKind::Geometric;
  /// Used by Simple and Lemma; must be positive.
  double xi_v = 1.0, eta_v = 1.0, xi_h = 1.0, eta_h = 1.0;

  static SupplementChoice simple(double xi_v = 1.0, double eta_v = 1.0, double xi_h = 1.0,
                                 double eta_h = 1.0) {
    return {SupplementKind::Simple, xi_v, eta_v, xi_h, eta_h};
  }
  static SupplementChoice geometric() { return {SupplementKind::Geometric}; }
  static SupplementChoice lemma(double xi_v = 1.0, double eta_v = 1.0, double xi_h = 1.0,
                                double eta_h = 1.0) {
    return {SupplementKind::Lemma, xi_v, eta_v, xi_h, eta_h};
  }
  static SupplementChoice mapped() { return {SupplementKind::Mapped}; }
};

/// xi_V, eta_V, xi_H, eta_H from the edge normals: 1/sqrt(1 - (nu_H . nu_i)^2)
/// with i = 2, 1 for the V pair and 1/sqrt(1 - (nu_V . nu_i)^2) with i = 4, 3
/// for the H pair, where nu_H ~ nu_3 - nu_4 and nu_V ~ nu_1 - nu_2.
std::array<double, 4> geometric_constants(const Quad& quad);

/// lambda = alpha l_a + beta l_b + gamma, or delta = l_a + l_b when the
/// two edges are parallel.
struct PairExpansion {
  bool parallel = false;
  double alpha = 1.0, beta = 1.0, gamma = 0.0;
  double delta = 0.0;
};

/// lambda_H, lambda_V, lambda_12, lambda_34, R_V and R_H of one element.
struct DirectionFunctions {
  SupplementKind kind = SupplementKind::Simple;
  double xi_v = 1.0, eta_v = 1.0, xi_h = 1.0, eta_h = 1.0;
  std::array<Affine, 4> lambda;
  Affine lambda_h, lambda_v, lambda_12, lambda_34;
  PairExpansion h;  ///< lambda_H in {1, lambda_1, lambda_2}
  PairExpansion v;  ///< lambda_V in {1, lambda_3, lambda_4}

  ValueGrad r_v(const SamplePoint& p) const;
  ValueGrad r_h(const SamplePoint& p) const;
  /// Denominators of R_V and R_H (Simple/Geometric/Lemma); 1 for Mapped.
  std::array<double, 2> denominators(const Point2& x) const;
};

/// Throws SingularExpansion if the expansion constants cannot be found.
DirectionFunctions build_directions(const Quad& quad, const SupplementChoice& choice);

/// The two supplemental functions of DS_k, k >= 2, unscaled:
/// [0] = lambda_3 lambda_4 lambda_H^{k-2} R_V, [1] = lambda_1 lambda_2 lambda_V^{k-2} R_H,
/// or their mapped counterparts for SupplementKind::Mapped.
std::array<ValueGrad, 2> supplement_pair(const DirectionFunctions& dirs, int k, const SamplePoint& p);

/// Mapped supplements on the reference square, with reference gradients:
/// [0] = (1 - y^2) x y^{k-2}, [1] = (1 - x^2) y x^{k-2}.
std::array<ValueGrad, 2> reference_supplement_pair(int k, const Point2& xh);

/// dim DS_r = (r+1)(r+2)/2 + 2.
constexpr int ds_dimension(int r) { return (r + 1) * (r + 2) / 2 + 2; }

enum class NodeKind { Vertex, Edge, Cell };

struct NodalPoint {
  SamplePoint at;
  NodeKind kind = NodeKind::Vertex;
  int entity = 0;  ///< vertex or edge index; 0 for cell nodes
  int index = 0;   ///< 1..r-1 along an edge, 0.. for cell nodes
};

/// Vertices, r-1 equally spaced points on e_1, e_2, e_3, e_4 (each in the
/// direction of increasing reference coordinate), then the order-(r-4)
/// Lagrange nodes of the inner triangle with corners F(-1/2,-1/2),
/// F(1/2,-1/2), F(0,1/2).
std::vector<NodalPoint> nodal_points(const Quad& quad, int r);

/// Scaled centred monomials ((x-c)/d)^a ((y-c)/d)^b, ordered by total degree.
struct MonomialBasis {
  Point2 centre;
  double scale = 1.0;
  std::vector<std::array<int, 2>> exponents;

  MonomialBasis(const Point2& centre, double scale, int max_degree, int min_degree = 0);
  int size() const { return static_cast<int>(exponents.size()); }
  ValueGrad eval(int i, const Point2& x) const;
};

/// Direct serendipity element DS_r(E), r >= 2, with its nodal basis.
class DSElement {
 public:
  /// Throws UnsupportedOrder (r < 2), SingularDoFMatrix, SingularExpansion.
  DSElement(const Quad& quad, int r, const SupplementChoice& choice);

  int r() const { return r_; }
  int dimension() const { return ds_dimension(r_); }
  const Quad& quad() const { return quad_; }
  const SupplementChoice& choice() const { return choice_; }
  const DirectionFunctions& directions() const { return dirs_; }
  const std::vector<NodalPoint>& nodes() const { return nodes_; }

  /// Scaled shape functions in the order: 4 vertex, 2(r-1) for e_1/e_2,
  /// 2(r-1) for e_3/e_4, then the cell functions.
  void eval_pre_basis(const SamplePoint& p, std::vector<ValueGrad>& out) const;
  /// Nodal basis, same ordering as nodes().
  void eval_basis(const SamplePoint& p, std::vector<ValueGrad>& out) const;
  /// Convenience overload that locates x on the reference square first.
  std::vector<ValueGrad> eval_basis(const Point2& x) const;

  /// 4r x 4r matrix A_ij = N_j(phi_i) of the boundary shape functions.
  const Eigen::MatrixXd& dof_matrix() const { return dof_matrix_; }
  /// Row i holds the pre-basis coefficients of nodal basis function i.
  const Eigen::MatrixXd& coefficients() const { return coeff_; }

  /// Nodal values f(x_{n,j}).
  std::vector<double> interpolate(const std::function<double(const Point2&)>& f) const;

 private:
  Quad quad_;
  int r_;
  SupplementChoice choice_;
  DirectionFunctions dirs_;
  std::vector<NodalPoint> nodes_;
  MonomialBasis cell_monomials_;
  std::vector<int> scale_powers_;
  Eigen::MatrixXd dof_matrix_;
  Eigen::MatrixXd coeff_;
};

/// Closed-form nodal basis of the Lemma variant, ordered like nodes().
/// Requires choice().kind == SupplementKind::Lemma (InvalidArgument otherwise).
std::vector<double> explicit_basis(const DSElement& element, const Point2& x);

}  // namespace dsfem
