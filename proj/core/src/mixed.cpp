#include "dsfem/mixed.hpp"

#include <cmath>
#include <string>

#include "dsfem/error.hpp"
#include "dsfem/quadrature.hpp"

namespace dsfem {

std::string_view to_string(MixedVariant v) {
  return v == MixedVariant::Full ? "full" : "reduced";
}

double legendre(int k, double t) {
  if (k == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int n = 1; n < k; ++n) {
    const double p2 = ((2 * n + 1) * t * p1 - n * p0) / (n + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

MixedElement::MixedElement(const Quad& quad, int r, MixedVariant variant, const SupplementChoice& choice,
                           Options options)
    : quad_(quad),
      r_(r),
      variant_(variant),
      choice_(choice),
      options_(options),
      dirs_(build_directions(quad, choice)),
      curl_mono_(quad.centroid(), quad.scale(), r + 1, 1),
      x_mono_(quad.centroid(), quad.scale(), variant == MixedVariant::Full ? r : r - 1),
      grad_mono_(quad.centroid(), quad.scale(), variant == MixedVariant::Full ? r : r - 1, 1),
      bubble_mono_(quad.centroid(), quad.scale(), r - 3),
      scalar_(quad.centroid(), quad.scale(), variant == MixedVariant::Full ? r : r - 1) {
  if (r < 1) throw Error(ErrorCode::UnsupportedOrder, "V_r needs r >= 1");
  const int dim = dimension();
  const int nspan = curl_mono_.size() + x_mono_.size() + 2;
  if (nspan != dim) throw Error(ErrorCode::SingularDoFMatrix, "spanning set has the wrong size");

  dof_matrix_.resize(dim, dim);
  std::vector<VecDiv> span;
  const int ke = r + 2, kc = options.cell_points > 0 ? options.cell_points : r + 9;
  dof_matrix_.setZero();
  for (int i = 0; i < 4; ++i) {
    const Vec2 nu = quad_.edge(i).normal;
    for (const auto& q : edge_quadrature(quad_, i, ke)) {
      eval_spanning(q, span);
      for (int k = 0; k <= r; ++k) {
        const double w = q.weight * legendre(k, q.t);
        for (int j = 0; j < dim; ++j) dof_matrix_(edge_dof(i, k), j) += w * dot(span[j].v, nu);
      }
    }
  }
  const int nd = grad_mono_.size();
  const double d4 = std::pow(quad_.scale(), 4);
  for (const auto& q : cell_quadrature(quad_, kc)) {
    eval_spanning(q, span);
    int row = num_edge_dofs();
    for (int a = 0; a < nd; ++a, ++row) {
      const Vec2 g = grad_mono_.eval(a, q.x).g;
      for (int j = 0; j < dim; ++j) dof_matrix_(row, j) += q.weight * dot(span[j].v, g);
    }
    ValueGrad b = ValueGrad::constant(1.0);
    for (int l = 0; l < 4; ++l) b = b * dirs_.lambda[l].eval(q.x);
    for (int a = 0; a < bubble_mono_.size(); ++a, ++row) {
      const Vec2 c = curl_of_gradient((b * bubble_mono_.eval(a, q.x)).g) / d4;
      for (int j = 0; j < dim; ++j) dof_matrix_(row, j) += q.weight * dot(span[j].v, c);
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dof_matrix_);
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    throw Error(ErrorCode::SingularDoFMatrix, "mixed DoF matrix is singular (rcond " + std::to_string(rc) + ")");
  }
  coeff_ = lu.inverse();
}

std::array<VecDiv, 2> MixedElement::supplements(const SamplePoint& p) const {
  std::array<VecDiv, 2> out;
  if (dirs_.kind == SupplementKind::Mapped) {
    const auto ref = reference_supplement_pair(r_ + 1, p.xh);
    const double j = p.jacobian.det();
    for (int i = 0; i < 2; ++i) out[i] = {(p.jacobian * curl_of_gradient(ref[i].g)) / j, 0.0};
  } else {
    const auto phi = supplement_pair(dirs_, r_ + 1, p);
    for (int i = 0; i < 2; ++i) out[i] = {curl_of_gradient(phi[i].g), 0.0};
  }
  if (options_.corrupt_supplement) out[0].v.x = -out[0].v.x;
  return out;
}

void MixedElement::eval_spanning(const SamplePoint& p, std::vector<VecDiv>& out) const {
  out.resize(dimension());
  int k = 0;
  for (int a = 0; a < curl_mono_.size(); ++a) out[k++] = {curl_of_gradient(curl_mono_.eval(a, p.x).g), 0.0};
  const double d = quad_.scale();
  const Vec2 y = (p.x - quad_.centroid()) / d;
  for (int a = 0; a < x_mono_.size(); ++a) {
    const double m = x_mono_.eval(a, p.x).v;
    const int deg = x_mono_.exponents[a][0] + x_mono_.exponents[a][1];
    out[k++] = {m * y, (2.0 + deg) * m / d};
  }
  const double sc = dirs_.kind == SupplementKind::Mapped ? 1.0 : std::pow(d, r_ + 1);
  const auto sup = supplements(p);
  out[k++] = {sup[0].v / sc, 0.0};
  out[k++] = {sup[1].v / sc, 0.0};
}

void MixedElement::eval_basis(const SamplePoint& p, std::vector<VecDiv>& out) const {
  thread_local std::vector<VecDiv> span;
  eval_spanning(p, span);
  const int dim = dimension();
  out.assign(dim, VecDiv{});
  for (int k = 0; k < dim; ++k) {
    VecDiv acc{};
    for (int j = 0; j < dim; ++j) {
      const double c = coeff_(j, k);
      acc.v += c * span[j].v;
      acc.div += c * span[j].div;
    }
    out[k] = acc;
  }
}

std::vector<VecDiv> MixedElement::eval_basis(const Point2& x) const {
  std::vector<VecDiv> out;
  eval_basis(quad_.sample_physical(x), out);
  return out;
}

Eigen::VectorXd MixedElement::dofs_of(const std::function<Vec2(const SamplePoint&)>& v, int edge_points,
                                      int cell_points) const {
  const int ke = edge_points > 0 ? edge_points : r_ + 2;
  const int kc = cell_points > 0 ? cell_points : (options_.cell_points > 0 ? options_.cell_points : r_ + 9);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension());
  for (int i = 0; i < 4; ++i) {
    const Vec2 nu = quad_.edge(i).normal;
    for (const auto& q : edge_quadrature(quad_, i, ke)) {
      const double vn = dot(v(q), nu);
      for (int k = 0; k <= r_; ++k) out(edge_dof(i, k)) += q.weight * legendre(k, q.t) * vn;
    }
  }
  const double d4 = std::pow(quad_.scale(), 4);
  for (const auto& q : cell_quadrature(quad_, kc)) {
    const Vec2 f = v(q);
    int row = num_edge_dofs();
    for (int a = 0; a < grad_mono_.size(); ++a, ++row) out(row) += q.weight * dot(f, grad_mono_.eval(a, q.x).g);
    ValueGrad b = ValueGrad::constant(1.0);
    for (int l = 0; l < 4; ++l) b = b * dirs_.lambda[l].eval(q.x);
    for (int a = 0; a < bubble_mono_.size(); ++a, ++row) {
      out(row) += q.weight * dot(f, curl_of_gradient((b * bubble_mono_.eval(a, q.x)).g) / d4);
    }
  }
  return out;
}

}  // namespace dsfem
