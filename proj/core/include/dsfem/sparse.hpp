#pragma once

#include <vector>

namespace dsfem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Duplicates are summed in the order they appear in `entries`, so a fixed
  /// triplet order gives bit-identical matrices.
  CsrMatrix(int rows, int cols, std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  /// y = A x
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> diagonal() const;
  double coeff(int i, int j) const;
  double max_abs() const;
  /// max |A_ij - A_ji|
  double asymmetry() const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

struct SolveReport {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients from x = 0. Stops when
/// ||b - A x|| <= rel_tol ||b|| or after max_iterations (default 20 sqrt(N));
/// the best iterate is returned with converged = false in that case.
SolveReport solve_pcg(const CsrMatrix& a, const std::vector<double>& b, double rel_tol = 1e-12,
                      int max_iterations = 0);

/// Sparse Cholesky (LDL^T) solve. Throws NoConvergence if A is not positive definite.
SolveReport solve_cholesky(const CsrMatrix& a, const std::vector<double>& b);

enum class SolverKind { Pcg, Cholesky };

inline SolveReport solve_spd(const CsrMatrix& a, const std::vector<double>& b, SolverKind kind,
                             double rel_tol = 1e-12) {
  return kind == SolverKind::Pcg ? solve_pcg(a, b, rel_tol) : solve_cholesky(a, b);
}

}  // namespace dsfem
