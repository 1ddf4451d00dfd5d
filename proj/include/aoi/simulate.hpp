#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/sawtooth.hpp"

namespace aoi {

struct SimConfig {
  std::uint64_t seed = 1;
  double t_end = 1e5;
  std::optional<double> warmup;  // defaults to 1% of t_end
  std::vector<int> orders{1, 2};
  std::vector<double> s_values;
  std::size_t replications = 16;

  double warmup_time() const { return warmup.value_or(0.01 * t_end); }
};

/// Replication-averaged time averages with between-replication standard errors.
struct SimEstimates {
  std::vector<double> occupancy;                    // [q]
  std::vector<double> occupancy_stderr;
  std::vector<std::vector<double>> moment_avg;      // [order idx][j]
  std::vector<std::vector<double>> moment_stderr;
  std::vector<std::vector<double>> mgf_avg;         // [s idx][j]
  std::vector<std::vector<double>> mgf_stderr;
  std::vector<int> orders;
  std::vector<double> s_values;
  std::size_t events = 0;

  friend bool operator==(const SimEstimates&, const SimEstimates&) = default;
};

/// Discrete-event simulation of the hybrid system from x(0) = 0, q(0) = 0.
SimEstimates simulate(const ShsModel& model, const SimConfig& config);

struct EmpiricalDistribution {
  TimeHistogram histogram;  // merged over replications
  std::vector<double> masses;
  std::vector<double> densities;
  double overflow = 0.0;    // fraction of time above the last edge
  double underflow = 0.0;   // fraction of time below the first edge
};

/// Time-weighted histogram of component `component` (0-based) on `edges`.
EmpiricalDistribution empirical_distribution(const ShsModel& model, std::size_t component,
                                             const SimConfig& config, std::vector<double> edges);

void validate_config(const SimConfig& config);

}  // namespace aoi
