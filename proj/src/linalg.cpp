#include "aoi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "aoi/errors.hpp"
#include "aoi/model.hpp"

namespace aoi {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double k) {
  for (auto& x : data_) x *= k;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  DenseMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> row_times(std::span<const double> x, const DenseMatrix& a) {
  if (x.size() != a.rows()) throw std::invalid_argument("row_times: length mismatch");
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a(i, j);
  }
  return out;
}

std::vector<double> times_col(const DenseMatrix& a, std::span<const double> u) {
  if (u.size() != a.cols()) throw std::invalid_argument("times_col: length mismatch");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * u[j];
    out[i] = s;
  }
  return out;
}

double norm_inf(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

LuFactorization::LuFactorization(const DenseMatrix& a, double singular_pivot)
    : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LU: matrix must be square");
  for (double x : a.data()) {
    if (!std::isfinite(x)) throw std::invalid_argument("LU: non-finite matrix entry");
  }
  std::iota(perm_.begin(), perm_.end(), 0);
  const double threshold = singular_pivot * a.norm_inf();

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    }
    const double mag = std::abs(lu_(p, k));
    if (!(mag > threshold)) throw SingularMatrixError(k, mag);
    if (p != k) {
      std::swap(perm_[k], perm_[p]);
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = lu_(i, k) / lu_(k, k);
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  if (b.size() != n_) throw std::invalid_argument("LU solve: length mismatch");
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

namespace {

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

}  // namespace

std::vector<double> solve_linear(const DenseMatrix& a, std::span<const double> b,
                                 const LinalgTolerances& tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: matrix must be square");
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: length mismatch");
  // x A = b  <=>  A^T x^T = b^T
  return LuFactorization(transpose(a), tol.singular_pivot).solve(b);
}

std::vector<double> stationary_distribution(const ShsModel& model, const LinalgTolerances& tol) {
  require_valid(model);
  const auto nq = model.num_states();
  const auto d = model.departure_rates();

  // generator with self-transitions cancelled on the diagonal
  DenseMatrix gen(nq, nq);
  for (const auto& t : model.transitions()) {
    gen(t.from, t.to) += t.rate;
    gen(t.from, t.from) -= t.rate;
  }
  // replace the last balance column by the normalization
  DenseMatrix sys = gen;
  for (std::size_t i = 0; i < nq; ++i) sys(i, nq - 1) = 1.0;
  std::vector<double> rhs(nq, 0.0);
  rhs[nq - 1] = 1.0;

  std::vector<double> pi;
  try {
    pi = solve_linear(sys, rhs, tol);
  } catch (const SingularMatrixError& e) {
    throw NonErgodicError(std::min(e.pivot(), nq - 1), "balance equations are rank deficient");
  }

  for (std::size_t q = 0; q < nq; ++q) {
    if (!(pi[q] > tol.min_probability)) {
      throw NonErgodicError(q, "stationary probability " + std::to_string(pi[q]) +
                                   " is not strictly positive");
    }
  }
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (auto& p : pi) p /= total;

  std::vector<double> inflow(nq, 0.0);
  for (const auto& t : model.transitions()) inflow[t.to] += t.rate * pi[t.from];
  for (std::size_t q = 0; q < nq; ++q) {
    const double resid = std::abs(pi[q] * d[q] - inflow[q]);
    if (resid > tol.balance_residual * std::max(1.0, d[q])) {
      throw NonErgodicError(q, "balance residual " + std::to_string(resid) + " exceeds tolerance");
    }
  }
  return pi;
}

namespace {

// tI - M is a Z-matrix; it is a nonsingular M-matrix (equivalently t > r(M))
// iff elimination without pivoting produces only positive pivots.
bool shifted_is_m_matrix(const DenseMatrix& m, double t) {
  const auto n = m.rows();
  DenseMatrix a = m * -1.0;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += t;
  for (std::size_t k = 0; k < n; ++k) {
    const double piv = a(k, k);
    if (!(piv > 0.0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / piv;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

double perron_residual(const DenseMatrix& m, std::span<const double> u, double r) {
  const auto mu = times_col(m, u);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(mu[i] - r * u[i]));
  return worst;
}

void normalize_max(std::vector<double>& u) {
  const double s = norm_inf(u);
  if (s > 0.0) {
    for (auto& x : u) x /= s;
  }
}

// Bisection on the M-matrix test inside [lo, hi], then inverse iteration at
// the upper end. The root estimate ends up within a few ulps. Power iteration
// alone stalls for defective Perron roots (equal-rate line networks) and only
// meets the residual target, not the root, to full precision.
PerronPair refine_perron(const DenseMatrix& m, std::vector<double> u, double lo, double hi) {
  for (int it = 0; it < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shifted_is_m_matrix(m, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // (hi I - M)^{-1} is entrywise non-negative, so iterates stay non-negative.
  DenseMatrix shifted = m * -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += hi;
  for (auto& x : u) x = std::max(x, 0.0) + 1.0;
  try {
    const LuFactorization lu(shifted, 0.0);
    for (int it = 0; it < 4; ++it) {
      u = lu.solve(u);
      for (auto& x : u) x = std::max(x, 0.0);
      normalize_max(u);
    }
  } catch (const SingularMatrixError&) {
    // hi landed exactly on the root; the power iterate is the best we have
  }
  return {0.5 * (lo + hi), std::move(u), 0};
}

// Widens [q - w, q + w] until it brackets the root for the M-matrix test.
std::pair<double, double> bracket_root(const DenseMatrix& m, double q, double w, double scale) {
  double hi = q + w;
  while (!shifted_is_m_matrix(m, hi)) {
    w *= 4.0;
    hi = q + w;
    if (hi > 2.0 * scale + 1.0) break;
  }
  double lo = std::max(0.0, q - w);
  while (lo > 0.0 && shifted_is_m_matrix(m, lo)) {
    w *= 4.0;
    lo = std::max(0.0, q - w);
  }
  return {lo, hi};
}

}  // namespace

PerronPair perron_root(const DenseMatrix& m, const LinalgTolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("perron_root: matrix must be square and non-empty");
  for (double x : m.data()) {
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("perron_root: matrix must be finite and non-negative");
  }
  const auto n = m.rows();
  const double scale = m.norm_inf();
  std::vector<double> u(n, 1.0);
  if (scale == 0.0) return {0.0, u, 0};

  const double target = tol.perron_residual * scale;
  double quotient = 0.0;
  int stable = 0;
  long it = 0;
  for (; it < tol.power_max_iterations; ++it) {
    auto w = times_col(m, u);
    const double q = norm_inf(w);
    if (q == 0.0) return {0.0, u, it};  // u lies in the null space
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(w[i] - q * u[i]));
    if (resid <= target) {
      quotient = q;
      break;
    }
    stable = std::abs(q - quotient) <= tol.power_quotient_change * q ? stable + 1 : 0;
    quotient = q;
    if (stable >= tol.power_stable_iterations) break;
    // averaged step: power iteration on (I + M / q) / 2 damps periodic oscillation
    for (std::size_t i = 0; i < n; ++i) u[i] = 0.5 * (u[i] + w[i] / q);
    normalize_max(u);
  }

  const double power_resid = perron_residual(m, u, quotient);
  double lo = 0.0;
  double hi = scale * (1.0 + 1e-9) + std::numeric_limits<double>::min();
  if (power_resid <= target) {
    const double w = 4.0 * std::max(power_resid, std::numeric_limits<double>::epsilon() * scale);
    std::tie(lo, hi) = bracket_root(m, quotient, w, scale);
  }
  auto refined = refine_perron(m, u, lo, hi);
  refined.iterations = it;
  if (perron_residual(m, refined.vector, refined.root) <= target) return refined;
  if (power_resid <= target) return {quotient, std::move(u), it};
  throw ConvergenceError("perron_root: residual target not reached after " + std::to_string(it) + " iterations",
                         refined.vector);
}

double spectral_abscissa(const ShsModel& model, const LinalgTolerances& tol) {
  const std::vector<double> flat(model.num_states(), 1.0 / static_cast<double>(std::max<std::size_t>(1, model.num_states())));
  const auto bs = build_block_system(model, flat);
  const double sigma = 1.0 + *std::max_element(bs.departure.begin(), bs.departure.end());
  DenseMatrix shifted = bs.r - bs.d;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += sigma;
  return perron_root(shifted, tol).root - sigma;
}

}  // namespace aoi
