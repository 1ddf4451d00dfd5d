#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aoi {

// Exact integrals of functions of a unit-slope age over one segment: the age
// starts at `a` and grows for `tau` time units.

/// Integral of (a+u)^m for u in [0, tau].
double power_integral(double a, double tau, int m);

/// Integral of exp(s (a+u)) for u in [0, tau]; tends to tau e^{sa} as s -> 0.
double exp_integral(double a, double tau, double s);

/// Time spent by a sawtooth in each bin of a fixed partition of the age axis.
class TimeHistogram {
 public:
  TimeHistogram() = default;
  /// `edges` must be strictly increasing; the last edge may be +infinity.
  explicit TimeHistogram(std::vector<double> edges);

  void add_segment(double a, double tau);
  void merge(const TimeHistogram& other);

  const std::vector<double>& edges() const noexcept { return edges_; }
  const std::vector<double>& time_in_bin() const noexcept { return time_; }
  double underflow() const noexcept { return under_; }
  double overflow() const noexcept { return over_; }
  double total_time() const noexcept { return total_; }

  /// Fraction of total time per bin.
  std::vector<double> masses() const;
  /// Masses divided by bin widths (zero for an infinite bin).
  std::vector<double> densities() const;

 private:
  std::vector<double> edges_;
  std::vector<double> time_;
  double under_ = 0.0;
  double over_ = 0.0;
  double total_ = 0.0;
};

/// Running time integrals of x_j^m and e^{s x_j} for every age component.
class SawtoothAccumulator {
 public:
  SawtoothAccumulator(std::size_t components, std::vector<int> orders, std::vector<double> s_values);

  void add(std::size_t component, double a, double tau);
  /// Advances every component by the same duration (ages given per component).
  void add_all(std::span<const double> ages, double tau);

  double elapsed(std::size_t component) const { return elapsed_[component]; }
  /// Time average of x_j^m for orders()[k].
  double moment_average(std::size_t k, std::size_t component) const;
  /// Time average of e^{s x_j} for s_values()[k].
  double mgf_average(std::size_t k, std::size_t component) const;

  const std::vector<int>& orders() const noexcept { return orders_; }
  const std::vector<double>& s_values() const noexcept { return s_values_; }

 private:
  std::size_t components_;
  std::vector<int> orders_;
  std::vector<double> s_values_;
  std::vector<double> elapsed_;
  std::vector<double> moment_sum_;  // [k * components + j]
  std::vector<double> mgf_sum_;
};

/// Sample mean and standard error of the mean of replication-level values.
struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_and_stderr(std::span<const double> values);

}  // namespace aoi
