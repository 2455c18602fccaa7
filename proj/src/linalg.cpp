#include "ecs/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ecs/errors.hpp"

namespace ecs::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("ragged matrix initializer");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::outer(std::span<const double> v) {
  Matrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * v[j];
  }
  return m;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix shape mismatch");
  }
}

}  // namespace

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
Matrix operator*(double s, Matrix rhs) { return rhs *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("matrix product: inner dimensions differ");
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

double trace(const Matrix& m) {
  if (!m.square()) throw DimensionError("trace of a non-square matrix");
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double norm_inf(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  }
  return d;
}

double asymmetry(const Matrix& m) {
  if (!m.square()) throw DimensionError("asymmetry of a non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
  }
  return d;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& m) {
  if (!m.square() || m.rows() == 0) {
    throw DimensionError("symmetric_eigen needs a non-empty square matrix");
  }
  const std::size_t n = m.rows();
  double scale = 0.0;
  for (double x : m.data()) {
    detail::require_finite(x, "matrix entry");
    scale = std::max(scale, std::abs(x));
  }
  if (asymmetry(m) > 1e-10 * std::max(1.0, scale)) {
    throw InvariantError("symmetric_eigen: input is not symmetric");
  }

  // Work on the symmetrized copy so tiny asymmetries do not bias the result.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  }
  Matrix v = Matrix::identity(n);

  SymmetricEigen result;
  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);
  const double target = std::numeric_limits<double>::epsilon() * frob * 1e-2;

  double off = off_diagonal_norm(a);
  result.off_norm_history.push_back(off);
  int sweep = 0;
  while (off > target && off > 0.0) {
    if (sweep == kMaxSweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(kMaxSweeps) + " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // After a few sweeps, drop elements that no longer change either diagonal.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        // Rutishauser's stable rotation.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = arp - s * (arq + tau * arp);
          a(p, r) = a(r, p);
          a(r, q) = arq + s * (arp - tau * arq);
          a(q, r) = a(r, q);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    off = off_diagonal_norm(a);
    result.off_norm_history.push_back(off);
  }
  result.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) result.vectors(r, k) = v(r, order[k]);
  }
  return result;
}

std::array<std::complex<double>, 4> nonsym_eigenvalues_4x4(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw DimensionError("nonsym_eigenvalues_4x4 needs a 4x4 matrix");
  }
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  }
  Eigen::EigenSolver<Eigen::Matrix4d> solver(e, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("nonsymmetric 4x4 eigenvalue iteration failed");
  }
  std::array<std::complex<double>, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = solver.eigenvalues()(k);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return out;
}

Matrix psd_sqrt(const Matrix& m, double clamp) {
  const SymmetricEigen eig = symmetric_eigen(m);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = eig.values[k];
    if (lambda < -clamp) {
      throw InvariantError("psd_sqrt: matrix has eigenvalue " + std::to_string(lambda));
    }
    const double root = std::sqrt(std::max(lambda, 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = root * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * eig.vectors(j, k);
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, std::size_t dim_a, std::size_t dim_b, Keep keep) {
  if (!rho.square() || rho.rows() != dim_a * dim_b || dim_a == 0 || dim_b == 0) {
    throw DimensionError("partial_trace: matrix size " + std::to_string(rho.rows()) +
                         " does not match " + std::to_string(dim_a) + "x" +
                         std::to_string(dim_b));
  }
  if (keep == Keep::A) {
    Matrix out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i) {
      for (std::size_t k = 0; k < dim_a; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_b; ++j) s += rho(i * dim_b + j, k * dim_b + j);
        out(i, k) = s;
      }
    }
    return out;
  }
  Matrix out(dim_b, dim_b);
  for (std::size_t j = 0; j < dim_b; ++j) {
    for (std::size_t l = 0; l < dim_b; ++l) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_a; ++i) s += rho(i * dim_b + j, i * dim_b + l);
      out(j, l) = s;
    }
  }
  return out;
}

Matrix partial_trace_pure(std::span<const double> psi, std::size_t dim_a, std::size_t dim_b,
                          Keep keep) {
  if (psi.size() != dim_a * dim_b || dim_a == 0 || dim_b == 0) {
    throw DimensionError("partial_trace_pure: vector length does not match dimensions");
  }
  // psi viewed as a dim_a x dim_b matrix M: rho_A = M M^T, rho_B = M^T M.
  if (keep == Keep::A) {
    Matrix out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i) {
      for (std::size_t k = i; k < dim_a; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_b; ++j) s += psi[i * dim_b + j] * psi[k * dim_b + j];
        out(i, k) = s;
        out(k, i) = s;
      }
    }
    return out;
  }
  Matrix out(dim_b, dim_b);
  for (std::size_t i = 0; i < dim_a; ++i) {
    const double* row = psi.data() + i * dim_b;
    for (std::size_t j = 0; j < dim_b; ++j) {
      if (row[j] == 0.0) continue;
      for (std::size_t l = 0; l < dim_b; ++l) out(j, l) += row[j] * row[l];
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& rho, std::size_t dim_a, std::size_t dim_b) {
  if (!rho.square() || rho.rows() != dim_a * dim_b) {
    throw DimensionError("partial_transpose: matrix size does not match dimensions");
  }
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_b; ++j) {
      for (std::size_t k = 0; k < dim_a; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
          out(i * dim_b + j, k * dim_b + l) = rho(i * dim_b + l, k * dim_b + j);
        }
      }
    }
  }
  return out;
}

}  // namespace ecs::linalg
