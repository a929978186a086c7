#include "dsfem/sparse.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "dsfem/error.hpp"

namespace dsfem {

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<Triplet> entries) : rows_(rows), cols_(cols) {
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(rows + 1, 0);
  int last_row = -1, last_col = -1;
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw Error(ErrorCode::InvalidArgument, "triplet index out of range");
    }
    if (t.row == last_row && t.col == last_col) {
      values_.back() += t.value;
      continue;
    }
    col_idx_.push_back(t.col);
    values_.push_back(t.value);
    ++row_ptr_[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (int i = 0; i < rows; ++i) row_ptr_[i + 1] += row_ptr_[i];
}

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
    y[i] = acc;
  }
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) d[i] = coeff(i, i);
  return d;
}

double CsrMatrix::coeff(int i, int j) const {
  const auto first = col_idx_.begin() + row_ptr_[i];
  const auto last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return it != last && *it == j ? values_[it - col_idx_.begin()] : 0.0;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      m = std::max(m, std::abs(values_[k] - coeff(col_idx_[k], i)));
    }
  }
  return m;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SolveReport solve_pcg(const CsrMatrix& a, const std::vector<double>& b, double rel_tol, int max_iterations) {
  const int n = a.rows();
  if (max_iterations <= 0) max_iterations = std::max(1, static_cast<int>(std::ceil(20.0 * std::sqrt(n))));
  SolveReport rep;
  rep.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }
  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) d = d > 0.0 ? 1.0 / d : 1.0;

  std::vector<double> r = b, z(n), p(n), ap(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  std::vector<double> best = rep.x;
  double best_res = 1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    a.multiply(p, ap);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      rep.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    rep.iterations = it;
    const double res = norm2(r) / bnorm;
    if (res < best_res) {
      best_res = res;
      best = rep.x;
    }
    if (res <= rel_tol) {
      rep.relative_residual = res;
      rep.converged = true;
      return rep;
    }
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rep.x = std::move(best);
  rep.relative_residual = best_res;
  rep.converged = false;
  return rep;
}

SolveReport solve_cholesky(const CsrMatrix& a, const std::vector<double>& b) {
  const int n = a.rows();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(a.nonzeros());
  for (int i = 0; i < n; ++i) {
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) trip.emplace_back(i, a.col_idx()[k], a.values()[k]);
  }
  Eigen::SparseMatrix<double> m(n, a.cols());
  m.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any()) {
    throw Error(ErrorCode::NoConvergence, "sparse Cholesky failed: matrix is not positive definite");
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  const Eigen::VectorXd x = ldlt.solve(rhs);
  SolveReport rep;
  rep.x.assign(x.data(), x.data() + n);
  const Eigen::VectorXd res = rhs - m * x;
  const double bn = rhs.norm();
  rep.relative_residual = bn > 0.0 ? res.norm() / bn : res.norm();
  rep.converged = true;
  return rep;
}

}  // namespace dsfem
