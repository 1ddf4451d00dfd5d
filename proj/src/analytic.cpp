#include "aoi/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

namespace {

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

std::vector<std::vector<double>> split_states(std::span<const double> v, std::size_t nq, std::size_t n) {
  std::vector<std::vector<double>> out(nq);
  for (std::size_t q = 0; q < nq; ++q) out[q].assign(v.begin() + q * n, v.begin() + (q + 1) * n);
  return out;
}

}  // namespace

std::vector<double> aggregate_over_states(std::span<const double> long_row, std::size_t num_states,
                                          std::size_t age_dim) {
  std::vector<double> out(age_dim, 0.0);
  for (std::size_t q = 0; q < num_states; ++q) {
    for (std::size_t j = 0; j < age_dim; ++j) out[j] += long_row[q * age_dim + j];
  }
  return out;
}

StationaryMoments stationary_moments(const ShsModel& model, int max_order,
                                     const AnalyticTolerances& tol) {
  if (max_order < 1) throw std::invalid_argument("stationary_moments: order must be >= 1");
  const auto pi = stationary_distribution(model, tol.linalg);
  const auto bs = build_block_system(model, pi);
  const auto nq = bs.num_states;
  const auto n = bs.age_dim;

  // v^k (D - R) = k v^{k-1}, solved as (D - R)^T v^T = k v^{k-1}^T
  const DenseMatrix d_minus_r = bs.d - bs.r;
  std::optional<LuFactorization> lu;
  try {
    lu.emplace(transpose(d_minus_r), tol.linalg.singular_pivot);
  } catch (const SingularMatrixError& e) {
    throw UnstableError("D - R is singular at pivot " + std::to_string(e.pivot()));
  }

  StationaryMoments out;
  out.pi = pi;
  std::vector<double> prev = bs.pi_rep;
  for (int k = 1; k <= max_order; ++k) {
    std::vector<double> rhs(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) rhs[i] = k * prev[i];
    auto v = lu->solve(rhs);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < -tol.negative_moment) {
        throw UnstableError("order-" + std::to_string(k) + " moment entry " + std::to_string(i) +
                            " is " + std::to_string(v[i]));
      }
      v[i] = std::max(v[i], 0.0);
    }
    MomentVector mv;
    mv.order = k;
    mv.per_state = split_states(v, nq, n);
    mv.aggregate = aggregate_over_states(v, nq, n);
    out.orders.push_back(std::move(mv));
    prev = std::move(v);
  }
  return out;
}

double mgf_radius(const ShsModel& model, const AnalyticTolerances& tol) {
  stationary_moments(model, 1, tol);  // certifies the non-negative first moment
  const double s0 = -spectral_abscissa(model, tol.linalg);
  if (!(s0 > 0.0)) throw UnstableError("spectral abscissa " + std::to_string(-s0) + " is not negative");
  return s0;
}

MgfEvaluation stationary_mgf(const ShsModel& model, double s, const AnalyticTolerances& tol) {
  return stationary_mgf(model, s, mgf_radius(model, tol), tol);
}

MgfEvaluation stationary_mgf(const ShsModel& model, double s, double radius,
                             const AnalyticTolerances& tol) {
  if (!std::isfinite(s) || s >= radius * (1.0 - tol.region_margin)) throw OutOfRegionError(s, radius);
  const auto pi = stationary_distribution(model, tol.linalg);
  const auto bs = build_block_system(model, pi);

  // v^s (D - R - sI) = v^0 R_hat
  DenseMatrix a = bs.d - bs.r;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= s;
  const auto rhs = row_times(bs.pi_rep, bs.r_hat);
  std::vector<double> v;
  try {
    v = solve_linear(a, rhs, tol.linalg);
  } catch (const SingularMatrixError&) {
    throw OutOfRegionError(s, radius);
  }
  MgfEvaluation out;
  out.s = s;
  out.radius = radius;
  out.per_state = split_states(v, bs.num_states, bs.age_dim);
  out.aggregate = aggregate_over_states(v, bs.num_states, bs.age_dim);
  return out;
}

std::vector<double> moments_via_mgf(const ShsModel& model, int order, const AnalyticTolerances& tol) {
  if (order < 1) throw std::invalid_argument("moments_via_mgf: order must be >= 1");
  const double s0 = mgf_radius(model, tol);
  const double h = 1e-4 * s0;
  const auto n = model.age_dim();
  std::vector<double> out(n, 0.0);
  // f^(m)(0) ~ h^-m sum_k (-1)^k C(m,k) f((m/2 - k) h)
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double s = (0.5 * order - k) * h;
    const auto mgf = stationary_mgf(model, s, s0, tol);
    const double w = (k % 2 == 0 ? 1.0 : -1.0) * binom;
    for (std::size_t j = 0; j < n; ++j) out[j] += w * mgf.aggregate[j];
    binom = binom * (order - k) / (k + 1);
  }
  const double scale = std::pow(h, order);
  for (auto& x : out) x /= scale;
  return out;
}

namespace {

struct TransientSystem {
  DenseMatrix gen;       // R + R_hat - D, drives v^0
  DenseMatrix drift;     // R - D
  DenseMatrix r_hat;
  std::size_t size = 0;  // n|Q|
  int max_order = 0;
  std::vector<double> s_values;

  std::size_t blocks() const { return 1 + static_cast<std::size_t>(max_order) + s_values.size(); }

  void derivative(const std::vector<double>& y, std::vector<double>& dy) const {
    const auto N = size;
    const std::span<const double> v0(y.data(), N);
    auto put = [&](std::size_t block, const std::vector<double>& v) {
      std::copy(v.begin(), v.end(), dy.begin() + block * N);
    };
    put(0, row_times(v0, gen));
    for (int m = 1; m <= max_order; ++m) {
      const std::span<const double> vm(y.data() + m * N, N);
      const std::span<const double> vprev(y.data() + (m - 1) * N, N);
      auto d = row_times(vm, drift);
      for (std::size_t i = 0; i < N; ++i) d[i] += m * vprev[i];
      put(m, d);
    }
    const auto fresh = row_times(v0, r_hat);
    for (std::size_t k = 0; k < s_values.size(); ++k) {
      const auto block = 1 + max_order + k;
      const std::span<const double> vs(y.data() + block * N, N);
      auto d = row_times(vs, drift);
      for (std::size_t i = 0; i < N; ++i) d[i] += s_values[k] * vs[i] + fresh[i];
      put(block, d);
    }
  }
};

}  // namespace

TransientTrajectory transient(const ShsModel& model, const TransientInit& init,
                              const TransientOptions& options) {
  require_valid(model);
  const auto nq = model.num_states();
  const auto n = model.age_dim();
  if (init.ages.size() != n) throw ConfigError("transient: initial age vector must have length " + std::to_string(n));
  if (init.state_probs.size() != nq) throw ConfigError("transient: initial distribution must have length " + std::to_string(nq));
  double mass = 0.0;
  for (double p : init.state_probs) {
    if (!(p >= 0.0)) throw ConfigError("transient: initial probabilities must be non-negative");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw ConfigError("transient: initial distribution must sum to 1");
  if (!(options.t_end > 0.0) || !std::isfinite(options.t_end)) throw ConfigError("transient: t_end must be positive");
  for (int m : options.orders) {
    if (m < 1) throw ConfigError("transient: moment orders must be >= 1");
  }

  // R, R_hat and D do not depend on pi
  const auto bs = build_block_system(model, init.state_probs);
  const double d_max = *std::max_element(bs.departure.begin(), bs.departure.end());
  const double h_bound = std::min(0.01 / d_max, options.t_end / 1000.0);
  if (h_bound < 1e-12) throw ConfigError("transient: RK4 step " + std::to_string(h_bound) + " underflows 1e-12");
  const auto steps = static_cast<std::size_t>(std::ceil(options.t_end / h_bound));
  const double h = options.t_end / static_cast<double>(steps);

  TransientSystem sys;
  sys.drift = bs.r - bs.d;
  sys.gen = sys.drift + bs.r_hat;
  sys.r_hat = bs.r_hat;
  sys.size = bs.size();
  sys.max_order = options.orders.empty() ? 0 : *std::max_element(options.orders.begin(), options.orders.end());
  sys.s_values = options.s_values;
  const auto N = sys.size;

  std::vector<double> y(sys.blocks() * N, 0.0);
  for (std::size_t q = 0; q < nq; ++q) {
    const double p = init.state_probs[q];
    for (std::size_t j = 0; j < n; ++j) {
      const auto i = q * n + j;
      y[i] = p;
      for (int m = 1; m <= sys.max_order; ++m) y[m * N + i] = std::pow(init.ages[j], m) * p;
      for (std::size_t k = 0; k < sys.s_values.size(); ++k) {
        y[(1 + sys.max_order + k) * N + i] = std::exp(sys.s_values[k] * init.ages[j]) * p;
      }
    }
  }

  TransientTrajectory out;
  out.num_states = nq;
  out.age_dim = n;
  out.step = h;
  out.orders = options.orders;
  out.s_values = options.s_values;

  auto record = [&](double t) {
    out.times.push_back(t);
    std::vector<double> pi(nq);
    for (std::size_t q = 0; q < nq; ++q) pi[q] = y[q * n];
    out.pi_t.push_back(std::move(pi));
    std::vector<std::vector<double>> ms;
    for (int m : options.orders) ms.emplace_back(y.begin() + m * N, y.begin() + (m + 1) * N);
    out.moments_t.push_back(std::move(ms));
    std::vector<std::vector<double>> gs;
    for (std::size_t k = 0; k < sys.s_values.size(); ++k) {
      const auto b = (1 + sys.max_order + k) * N;
      gs.emplace_back(y.begin() + b, y.begin() + b + N);
    }
    out.mgf_t.push_back(std::move(gs));
  };

  const std::size_t samples = std::max<std::size_t>(1, options.max_samples);
  const std::size_t stride = (steps + samples - 1) / samples;
  record(0.0);

  std::vector<double> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
  for (std::size_t step = 1; step <= steps; ++step) {
    sys.derivative(y, k1);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    sys.derivative(tmp, k2);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    sys.derivative(tmp, k3);
    for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * k3[i];
    sys.derivative(tmp, k4);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (step % stride == 0 || step == steps) record(static_cast<double>(step) * h);
  }
  return out;
}

}  // namespace aoi
