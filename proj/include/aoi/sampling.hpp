#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoi/rng.hpp"
#include "aoi/sawtooth.hpp"

namespace aoi {

/// Law of the inter-update time Y of a status-sampling renewal process.
/// Only continuous families are representable.
class RenewalSpec {
 public:
  enum class Family { Exponential, Uniform, Gamma };

  static RenewalSpec exponential(double rate);
  static RenewalSpec uniform(double b);  // Uniform(0, b)
  static RenewalSpec gamma(double shape, double scale);

  Family family() const noexcept { return family_; }
  double rate() const noexcept { return a_; }    // Exponential
  double bound() const noexcept { return a_; }   // Uniform
  double shape() const noexcept { return a_; }   // Gamma
  double scale() const noexcept { return b_; }   // Gamma

  /// E[Y^j].
  double raw_moment(int j) const;
  double mean() const { return raw_moment(1); }
  /// P(Y > y).
  double survival(double y) const;
  double sample(SplitMix64& rng) const;

  /// Equilibrium renewal age Z: density P(Y > z) / E[Y].
  double equilibrium_pdf(double z) const;
  /// P(Z > z).
  double equilibrium_tail(double z) const;
  /// Smallest z with P(Z > z) <= tail.
  double equilibrium_upper_quantile(double tail) const;

  std::string describe() const;

  friend bool operator==(const RenewalSpec&, const RenewalSpec&) = default;

 private:
  RenewalSpec(Family f, double a, double b) : family_(f), a_(a), b_(b) {}
  Family family_;
  double a_;
  double b_;
};

/// Line of nodes 1..n; hop i carries samples of node i's update process to
/// node i+1. Node 0 is the source, whose age is always zero.
struct SamplingNetwork {
  std::vector<RenewalSpec> hops;

  friend bool operator==(const SamplingNetwork&, const SamplingNetwork&) = default;
};

void require_valid(const SamplingNetwork& network);

/// Samples of a density on an abscissa (uniform unless built pointwise).
struct GridDensity {
  std::vector<double> grid;
  std::vector<double> values;

  /// Trapezoid integral over the grid.
  double integral() const;
  double mean() const;
  double variance() const;
  /// Linear interpolation, zero outside the grid.
  double value_at(double x) const;
  /// Integral of the piecewise-linear interpolant over [lo, hi].
  double mass_between(double lo, double hi) const;
};

/// Uniform abscissa of `points` nodes over [0, extent].
std::vector<double> uniform_grid(double extent, std::size_t points);

GridDensity equilibrium_age_pdf(const RenewalSpec& spec, std::span<const double> grid);

struct AgeMoments {
  double mean = 0.0;
  double second = 0.0;
  double variance() const { return second - mean * mean; }
};

/// (E[Z], E[Z^2]) = (E[Y^2] / 2E[Y], E[Y^3] / 3E[Y]).
AgeMoments renewal_age_moments(const RenewalSpec& spec);

/// Grid extent holding all but 1e-6 of the mass of X_k.
double required_extent(const SamplingNetwork& network, std::size_t k);

inline constexpr std::size_t kDefaultGridPoints = 4096;

/// Default abscissa for node k: kDefaultGridPoints over [0, required_extent].
std::vector<double> default_grid(const SamplingNetwork& network, std::size_t k,
                                 std::size_t points = kDefaultGridPoints);

/// Density of X_k = Z_0 + ... + Z_{k-1} by trapezoid convolution on a
/// uniform grid starting at 0. Throws TruncationError if the grid is short.
GridDensity node_age_pdf(const SamplingNetwork& network, std::size_t k, std::span<const double> grid);

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

/// Closed-form mean and variance of X_k (independent sum).
MeanVariance node_age_stats(const SamplingNetwork& network, std::size_t k);

struct SamplingSimConfig {
  std::uint64_t seed = 1;
  double t_end = 1e5;
  std::optional<double> warmup;  // defaults to 1% of t_end
  std::size_t replications = 16;
  std::vector<double> edges;     // histogram bins; empty disables histograms

  double warmup_time() const { return warmup.value_or(0.01 * t_end); }
};

struct NodeEstimate {
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  std::optional<TimeHistogram> histogram;
};

struct SamplingSimResult {
  std::vector<NodeEstimate> nodes;  // index k-1 is node k
};

/// Sample-path construction of the sampling line from x(0) = 0.
SamplingSimResult simulate_sampling_line(const SamplingNetwork& network, const SamplingSimConfig& config);

/// L1 distance between a time-weighted histogram and a density: bin masses
/// against the density's mass per bin, plus the mass outside the bins.
double histogram_l1(const TimeHistogram& histogram, const GridDensity& density);

struct GaussianComparison {
  GridDensity convolution;
  GridDensity gaussian;
  double mean = 0.0;
  double variance = 0.0;
  double l1 = 0.0;  // includes the Gaussian mass outside the grid
};

GaussianComparison gaussian_comparison(const SamplingNetwork& network, std::size_t k,
                                       std::span<const double> grid);

}  // namespace aoi
