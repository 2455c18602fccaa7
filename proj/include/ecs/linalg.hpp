#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ecs::linalg {

/// Dense row-major real matrix. Small sizes only (a few hundred at most).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  /// |v><v| for a real vector.
  static Matrix outer(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double s);
Matrix operator*(double s, Matrix rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

Matrix transpose(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
double trace(const Matrix& m);
/// Maximum absolute row sum.
double norm_inf(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
/// Largest |m(i,j) - m(j,i)|.
double asymmetry(const Matrix& m);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
  /// Off-diagonal Frobenius norm at the start and after every sweep.
  std::vector<double> off_norm_history;
};

/// Cyclic Jacobi eigendecomposition. Throws DimensionError for non-square
/// input, InvariantError if asymmetric beyond 1e-10 (relative to the entry
/// scale) and ConvergenceError after 100 sweeps.
SymmetricEigen symmetric_eigen(const Matrix& m);

/// Eigenvalues of a general real 4x4 matrix, sorted by descending real part.
std::array<std::complex<double>, 4> nonsym_eigenvalues_4x4(const Matrix& m);

/// Square root of a symmetric positive semidefinite matrix. Eigenvalues in
/// [-clamp, 0) are treated as zero; anything more negative is an InvariantError.
Matrix psd_sqrt(const Matrix& m, double clamp = 1e-10);

enum class Keep { A, B };

/// Reduced density matrix of a bipartite operator on C^dA (x) C^dB.
Matrix partial_trace(const Matrix& rho, std::size_t dim_a, std::size_t dim_b, Keep keep);

/// Reduced density matrix of the pure state |psi><psi|, psi given as a flat
/// dA*dB amplitude vector (A index major). Avoids forming |psi><psi|.
Matrix partial_trace_pure(std::span<const double> psi, std::size_t dim_a, std::size_t dim_b,
                          Keep keep);

/// Transpose of subsystem B: <i j|rho^T_B|k l> = <i l|rho|k j>.
Matrix partial_transpose(const Matrix& rho, std::size_t dim_a, std::size_t dim_b);

}  // namespace ecs::linalg
