#pragma once

#include <cstddef>
#include <vector>

#include "aoi/linalg.hpp"
#include "aoi/model.hpp"

namespace aoi {

/// Stationary m-th moments. `per_state[q]` is E[x^m 1{q}], `aggregate` is E[x^m].
struct MomentVector {
  int order = 0;
  std::vector<std::vector<double>> per_state;
  std::vector<double> aggregate;
};

/// Orders 1..m, index k-1 holds order k.
struct StationaryMoments {
  std::vector<double> pi;
  std::vector<MomentVector> orders;

  const MomentVector& order(int m) const { return orders.at(static_cast<std::size_t>(m - 1)); }
};

struct MgfEvaluation {
  double s = 0.0;
  std::vector<std::vector<double>> per_state;
  std::vector<double> aggregate;
  double radius = 0.0;
};

struct AnalyticTolerances {
  double negative_moment = 1e-9;    // entries of the first moment above -this count as >= 0
  double region_margin = 1e-9;      // relative distance to s0 refused by the MGF
  LinalgTolerances linalg{};
};

StationaryMoments stationary_moments(const ShsModel& model, int max_order,
                                     const AnalyticTolerances& tol = {});

/// s0 = -spectral_abscissa(model); throws UnstableError when the first
/// moment has no non-negative solution.
double mgf_radius(const ShsModel& model, const AnalyticTolerances& tol = {});

MgfEvaluation stationary_mgf(const ShsModel& model, double s, const AnalyticTolerances& tol = {});

/// Same as above with s0 already known (saves the Perron computation).
MgfEvaluation stationary_mgf(const ShsModel& model, double s, double radius,
                             const AnalyticTolerances& tol = {});

/// Central-difference derivative of order m of the aggregate MGF at s = 0.
/// A consistency check on stationary_moments, not the primary route.
std::vector<double> moments_via_mgf(const ShsModel& model, int order,
                                    const AnalyticTolerances& tol = {});

struct TransientInit {
  std::vector<double> ages;         // deterministic x(0), length n
  std::vector<double> state_probs;  // P(q(0) = q)
};

struct TransientOptions {
  double t_end = 10.0;
  std::vector<int> orders;       // moment orders reported
  std::vector<double> s_values;  // MGF arguments reported
  std::size_t max_samples = 1000;  // output rows (excluding t = 0), thinned evenly
};

/// Solution of the moment/MGF differential equations sampled on a grid.
/// Vectors are long rows of length n|Q| laid out state by state.
struct TransientTrajectory {
  std::size_t num_states = 0;
  std::size_t age_dim = 0;
  double step = 0.0;
  std::vector<int> orders;
  std::vector<double> s_values;
  std::vector<double> times;
  std::vector<std::vector<double>> pi_t;                  // [sample][q]
  std::vector<std::vector<std::vector<double>>> moments_t;  // [sample][order idx][q*n + j]
  std::vector<std::vector<std::vector<double>>> mgf_t;      // [sample][s idx][q*n + j]
};

TransientTrajectory transient(const ShsModel& model, const TransientInit& init,
                              const TransientOptions& options);

/// Sum over states of a long row vector: length n.
std::vector<double> aggregate_over_states(std::span<const double> long_row, std::size_t num_states,
                                          std::size_t age_dim);

}  // namespace aoi
