#include "aoi/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "aoi/errors.hpp"
#include "aoi/parallel.hpp"

namespace aoi {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError({std::string("renewal parameter ") + what + " must be finite and positive"});
  }
}

}  // namespace

RenewalSpec RenewalSpec::exponential(double rate) {
  require_positive(rate, "rate");
  return {Family::Exponential, rate, 0.0};
}

RenewalSpec RenewalSpec::uniform(double b) {
  require_positive(b, "b");
  return {Family::Uniform, b, 0.0};
}

RenewalSpec RenewalSpec::gamma(double shape, double scale) {
  require_positive(shape, "shape");
  require_positive(scale, "scale");
  return {Family::Gamma, shape, scale};
}

double RenewalSpec::raw_moment(int j) const {
  double m = 1.0;
  switch (family_) {
    case Family::Exponential:
      for (int i = 1; i <= j; ++i) m *= i / a_;
      return m;
    case Family::Uniform:
      return std::pow(a_, j) / (j + 1);
    case Family::Gamma:
      for (int i = 0; i < j; ++i) m *= (a_ + i) * b_;
      return m;
  }
  return 0.0;
}

double RenewalSpec::survival(double y) const {
  if (y <= 0.0) return 1.0;
  switch (family_) {
    case Family::Exponential: return std::exp(-a_ * y);
    case Family::Uniform: return y >= a_ ? 0.0 : 1.0 - y / a_;
    case Family::Gamma: return boost::math::gamma_q(a_, y / b_);
  }
  return 0.0;
}

double RenewalSpec::sample(SplitMix64& rng) const {
  const double u = rng.uniform();
  switch (family_) {
    case Family::Exponential: return -std::log1p(-u) / a_;
    case Family::Uniform: return a_ * u;
    case Family::Gamma: return u == 0.0 ? 0.0 : b_ * boost::math::gamma_p_inv(a_, u);
  }
  return 0.0;
}

double RenewalSpec::equilibrium_pdf(double z) const {
  if (z < 0.0) return 0.0;
  return survival(z) / mean();
}

double RenewalSpec::equilibrium_tail(double z) const {
  if (z <= 0.0) return 1.0;
  switch (family_) {
    case Family::Exponential: return std::exp(-a_ * z);
    case Family::Uniform: {
      if (z >= a_) return 0.0;
      const double r = 1.0 - z / a_;
      return r * r;
    }
    case Family::Gamma: {
      // E[(Y - z)^+] / E[Y]
      const double x = z / b_;
      const double t = boost::math::gamma_q(a_ + 1.0, x) - x / a_ * boost::math::gamma_q(a_, x);
      return std::max(t, 0.0);
    }
  }
  return 0.0;
}

double RenewalSpec::equilibrium_upper_quantile(double tail) const {
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("quantile tail must lie in (0, 1)");
  switch (family_) {
    case Family::Exponential: return -std::log(tail) / a_;
    case Family::Uniform: return a_ * (1.0 - std::sqrt(tail));
    case Family::Gamma: {
      double hi = (a_ + 1.0) * b_;
      while (equilibrium_tail(hi) > tail) hi *= 2.0;
      double lo = 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (equilibrium_tail(mid) > tail ? lo : hi) = mid;
      }
      return hi;
    }
  }
  return 0.0;
}

std::string RenewalSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::Exponential: os << "exponential(rate=" << a_ << ")"; break;
    case Family::Uniform: os << "uniform(0," << a_ << ")"; break;
    case Family::Gamma: os << "gamma(shape=" << a_ << ",scale=" << b_ << ")"; break;
  }
  return os.str();
}

void require_valid(const SamplingNetwork& network) {
  if (network.hops.empty()) throw ValidationError({"sampling network has no hops"});
}

double GridDensity::integral() const {
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return s;
}

double GridDensity::mean() const {
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    s += 0.5 * (grid[i] * values[i] + grid[i - 1] * values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return s;
}

double GridDensity::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = (grid[i] - m) * (grid[i] - m) * values[i];
    const double b = (grid[i - 1] - m) * (grid[i - 1] - m) * values[i - 1];
    s += 0.5 * (a + b) * (grid[i] - grid[i - 1]);
  }
  return s;
}

double GridDensity::value_at(double x) const {
  if (grid.empty() || x < grid.front() || x > grid.back()) return 0.0;
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.end()) return values.back();
  const auto i = static_cast<std::size_t>(it - grid.begin());
  const double w = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return (1.0 - w) * values[i - 1] + w * values[i];
}

double GridDensity::mass_between(double lo, double hi) const {
  if (grid.size() < 2) return 0.0;
  lo = std::max(lo, grid.front());
  hi = std::min(hi, grid.back());
  if (!(hi > lo)) return 0.0;
  auto it = std::upper_bound(grid.begin(), grid.end(), lo);
  std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  double s = 0.0;
  for (; i + 1 < grid.size() && grid[i] < hi; ++i) {
    const double a = std::max(lo, grid[i]);
    const double b = std::min(hi, grid[i + 1]);
    if (b > a) s += 0.5 * (value_at(a) + value_at(b)) * (b - a);
  }
  return s;
}

std::vector<double> uniform_grid(double extent, std::size_t points) {
  if (!(extent > 0.0) || points < 2) throw ConfigError("grid needs a positive extent and at least two points");
  std::vector<double> g(points);
  const double h = extent / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = h * static_cast<double>(i);
  g.back() = extent;
  return g;
}

GridDensity equilibrium_age_pdf(const RenewalSpec& spec, std::span<const double> grid) {
  GridDensity out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  for (double z : grid) out.values.push_back(spec.equilibrium_pdf(z));
  return out;
}

AgeMoments renewal_age_moments(const RenewalSpec& spec) {
  const double ey = spec.raw_moment(1);
  return {spec.raw_moment(2) / (2.0 * ey), spec.raw_moment(3) / (3.0 * ey)};
}

namespace {

void check_node(const SamplingNetwork& network, std::size_t k) {
  require_valid(network);
  if (k < 1 || k > network.hops.size()) {
    throw ConfigError("node index " + std::to_string(k) + " outside 1.." + std::to_string(network.hops.size()));
  }
}

}  // namespace

double required_extent(const SamplingNetwork& network, std::size_t k) {
  check_node(network, k);
  // union bound: P(sum Z_i > sum q_i) <= sum P(Z_i > q_i)
  const double tail = 1e-6 / static_cast<double>(k);
  double extent = 0.0;
  for (std::size_t i = 0; i < k; ++i) extent += network.hops[i].equilibrium_upper_quantile(tail);
  return extent;
}

std::vector<double> default_grid(const SamplingNetwork& network, std::size_t k, std::size_t points) {
  return uniform_grid(required_extent(network, k), points);
}

GridDensity node_age_pdf(const SamplingNetwork& network, std::size_t k, std::span<const double> grid) {
  check_node(network, k);
  if (grid.size() < 2 || grid.front() != 0.0) throw ConfigError("convolution grid must start at 0 with at least two points");
  const auto N = grid.size();
  const double h = grid.back() / static_cast<double>(N - 1);
  for (std::size_t i = 1; i < N; ++i) {
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * h) throw ConfigError("convolution grid must be uniform");
  }
  const double need = required_extent(network, k);
  if (grid.back() < need * (1.0 - 1e-12)) throw TruncationError(grid.back(), need);

  auto acc = equilibrium_age_pdf(network.hops[0], grid);
  for (std::size_t hop = 1; hop < k; ++hop) {
    const auto g = equilibrium_age_pdf(network.hops[hop], grid).values;
    const auto& f = acc.values;
    std::vector<double> c(N, 0.0);
    for (std::size_t m = 1; m < N; ++m) {
      double s = 0.5 * (f[0] * g[m] + f[m] * g[0]);
      for (std::size_t j = 1; j < m; ++j) s += f[j] * g[m - j];
      c[m] = h * s;
    }
    acc.values = std::move(c);
  }
  for (auto& v : acc.values) v = std::max(v, 0.0);
  return acc;
}

MeanVariance node_age_stats(const SamplingNetwork& network, std::size_t k) {
  check_node(network, k);
  MeanVariance out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto z = renewal_age_moments(network.hops[i]);
    out.mean += z.mean;
    out.variance += z.variance();
  }
  return out;
}

namespace {

struct Reset {
  double time;
  double value;
};

struct NodeReplication {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<TimeHistogram> histogram;
};

// Age of a path at t- given its reset list and a cursor that only moves forward.
double left_limit(const std::vector<Reset>& path, std::size_t& cursor, double t) {
  while (cursor + 1 < path.size() && path[cursor + 1].time < t) ++cursor;
  return path[cursor].value + (t - path[cursor].time);
}

std::vector<NodeReplication> run_sampling_replication(const SamplingNetwork& network,
                                                      const SamplingSimConfig& config,
                                                      std::size_t r) {
  const double t_end = config.t_end;
  const double warmup = config.warmup_time();
  const auto rep_seed = stream_seed(config.seed, r);
  std::vector<NodeReplication> out(network.hops.size());

  std::vector<Reset> upstream;  // empty for the source
  for (std::size_t hop = 0; hop < network.hops.size(); ++hop) {
    SplitMix64 rng(stream_seed(rep_seed, hop));
    const auto& y = network.hops[hop];
    std::vector<Reset> path{{0.0, 0.0}};
    std::size_t cursor = 0;
    for (double t = y.sample(rng); t < t_end; t += y.sample(rng)) {
      const double v = upstream.empty() ? 0.0 : left_limit(upstream, cursor, t);
      path.push_back({t, v});
    }

    SawtoothAccumulator acc(1, {1, 2}, {});
    std::optional<TimeHistogram> hist;
    if (!config.edges.empty()) hist.emplace(config.edges);
    for (std::size_t i = 0; i < path.size(); ++i) {
      const double seg_end = i + 1 < path.size() ? path[i + 1].time : t_end;
      if (seg_end <= warmup) continue;
      const double start = std::max(path[i].time, warmup);
      const double a = path[i].value + (start - path[i].time);
      acc.add(0, a, seg_end - start);
      if (hist) hist->add_segment(a, seg_end - start);
    }
    auto& node = out[hop];
    node.mean = acc.moment_average(0, 0);
    node.variance = acc.moment_average(1, 0) - node.mean * node.mean;
    node.histogram = std::move(hist);
    upstream = std::move(path);
  }
  return out;
}

}  // namespace

SamplingSimResult simulate_sampling_line(const SamplingNetwork& network, const SamplingSimConfig& config) {
  require_valid(network);
  if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) throw ConfigError("sampling simulation: t_end must be positive");
  if (!(config.warmup_time() >= 0.0) || !(config.t_end > config.warmup_time())) {
    throw ConfigError("sampling simulation: t_end must exceed warmup");
  }
  if (config.replications < 1) throw ConfigError("sampling simulation: need at least one replication");
  if (!config.edges.empty()) (void)TimeHistogram(config.edges);

  std::vector<std::vector<NodeReplication>> reps(config.replications);
  for_each_replication(config.replications, [&](std::size_t r) {
    reps[r] = run_sampling_replication(network, config, r);
  });

  SamplingSimResult result;
  const auto n = network.hops.size();
  std::vector<double> means(reps.size()), vars(reps.size());
  for (std::size_t k = 0; k < n; ++k) {
    NodeEstimate est;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      means[r] = reps[r][k].mean;
      vars[r] = reps[r][k].variance;
    }
    const auto m = mean_and_stderr(means);
    const auto v = mean_and_stderr(vars);
    est.mean = m.mean;
    est.mean_stderr = m.stderr_;
    est.variance = v.mean;
    est.variance_stderr = v.stderr_;
    if (!config.edges.empty()) {
      TimeHistogram merged(config.edges);
      for (const auto& rep : reps) merged.merge(*rep[k].histogram);
      est.histogram = std::move(merged);
    }
    result.nodes.push_back(std::move(est));
  }
  return result;
}

double histogram_l1(const TimeHistogram& histogram, const GridDensity& density) {
  const auto masses = histogram.masses();
  const auto& edges = histogram.edges();
  double l1 = 0.0;
  double inside = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const double ref = density.mass_between(edges[k], edges[k + 1]);
    inside += ref;
    l1 += std::abs(masses[k] - ref);
  }
  const double emp_out = histogram.total_time() > 0.0
                             ? (histogram.underflow() + histogram.overflow()) / histogram.total_time()
                             : 0.0;
  const double ref_out = std::max(0.0, density.integral() - inside);
  return l1 + std::abs(emp_out - ref_out);
}

GaussianComparison gaussian_comparison(const SamplingNetwork& network, std::size_t k,
                                       std::span<const double> grid) {
  GaussianComparison out;
  out.convolution = node_age_pdf(network, k, grid);
  const auto stats = node_age_stats(network, k);
  out.mean = stats.mean;
  out.variance = stats.variance;
  const double sd = std::sqrt(stats.variance);
  out.gaussian.grid = out.convolution.grid;
  out.gaussian.values.reserve(grid.size());
  for (double x : grid) {
    const double z = (x - stats.mean) / sd;
    out.gaussian.values.push_back(std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi)));
  }
  GridDensity diff;
  diff.grid = out.convolution.grid;
  diff.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff.values[i] = std::abs(out.convolution.values[i] - out.gaussian.values[i]);
  }
  const auto cdf = [&](double x) { return 0.5 * std::erfc(-(x - stats.mean) / (sd * std::numbers::sqrt2)); };
  const double outside = cdf(grid.front()) + (1.0 - cdf(grid.back()));
  out.l1 = diff.integral() + outside;
  return out;
}

}  // namespace aoi
