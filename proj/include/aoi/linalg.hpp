#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aoi {

class ShsModel;

/// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double k);

  friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
  friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
  friend DenseMatrix operator*(DenseMatrix lhs, double k) { return lhs *= k; }
  friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  /// Maximum absolute row sum.
  double norm_inf() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Row vector times matrix: x A.
std::vector<double> row_times(std::span<const double> x, const DenseMatrix& a);
/// Matrix times column vector: A u.
std::vector<double> times_col(const DenseMatrix& a, std::span<const double> u);

double norm_inf(std::span<const double> v);

/// Tolerances of the dense kernels. Defaults are the documented contract.
struct LinalgTolerances {
  double singular_pivot = 1e-13;     // relative to ||A||_inf
  double balance_residual = 1e-10;
  double min_probability = 1e-12;
  double perron_residual = 1e-10;    // relative to ||M||_inf ||u||_inf
  double power_quotient_change = 1e-12;
  int power_stable_iterations = 10;
  long power_max_iterations = 100000;
};

/// LU factorization with partial pivoting, kept for repeated solves.
class LuFactorization {
 public:
  explicit LuFactorization(const DenseMatrix& a, double singular_pivot = 1e-13);

  /// Solves A x = b for column vector x.
  std::vector<double> solve(std::span<const double> b) const;

  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Row-vector solve x A = b.
std::vector<double> solve_linear(const DenseMatrix& a, std::span<const double> b,
                                 const LinalgTolerances& tol = {});

/// Stationary law of the discrete-state chain, certified strictly positive.
std::vector<double> stationary_distribution(const ShsModel& model,
                                            const LinalgTolerances& tol = {});

struct PerronPair {
  double root = 0.0;
  std::vector<double> vector;  // non-negative, max entry 1
  long iterations = 0;
};

/// Dominant real eigenvalue and non-negative right eigenvector of an
/// entrywise non-negative matrix.
PerronPair perron_root(const DenseMatrix& m, const LinalgTolerances& tol = {});

/// Upper bound on the real parts of the eigenvalues of R - D, obtained as
/// r(sigma) - sigma for sigma = 1 + max_q d_q.
double spectral_abscissa(const ShsModel& model, const LinalgTolerances& tol = {});

}  // namespace aoi
