#pragma once

// Shared fixtures for the unit tests: a small model corpus, a random model
// generator and reference computations written independently of the library
// (they work from the reset semantics, never from the block matrices).

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "aoi/analytic.hpp"
#include "aoi/errors.hpp"
#include "aoi/model.hpp"

namespace testsupport {

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

/// x' = x A applied entry by entry.
inline std::vector<double> apply_reset(const aoi::AgeResetMap& reset, const std::vector<double>& x) {
  std::vector<double> out(reset.size(), 0.0);
  for (std::size_t j = 0; j < reset.size(); ++j) {
    switch (reset[j].kind) {
      case aoi::AgeAssignment::Kind::Identity: out[j] = x[j]; break;
      case aoi::AgeAssignment::Kind::Fresh: out[j] = 0.0; break;
      case aoi::AgeAssignment::Kind::Copy: out[j] = x[reset[j].source]; break;
    }
  }
  return out;
}

/// 1 where the reset zeroes the component.
inline std::vector<double> fresh_mask(const aoi::AgeResetMap& reset) {
  std::vector<double> out(reset.size(), 0.0);
  for (std::size_t j = 0; j < reset.size(); ++j) {
    if (reset[j].kind == aoi::AgeAssignment::Kind::Fresh) out[j] = 1.0;
  }
  return out;
}

struct NamedModel {
  std::string name;
  aoi::ShsModel model;
};

/// Random model on a ring of states (so the chain is irreducible) with extra
/// random edges and random resets. Not necessarily stable.
inline aoi::ShsModel random_model(std::mt19937_64& rng, std::size_t nq, std::size_t n) {
  std::uniform_real_distribution<double> rate(0.3, 3.0);
  std::uniform_int_distribution<std::size_t> state(0, nq - 1);
  std::uniform_int_distribution<std::size_t> comp(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  auto random_reset = [&] {
    aoi::AgeResetMap r;
    for (std::size_t j = 0; j < n; ++j) {
      switch (kind(rng)) {
        case 0: r.push_back(aoi::AgeAssignment::identity()); break;
        case 1: r.push_back(aoi::AgeAssignment::fresh()); break;
        default: r.push_back(aoi::AgeAssignment::copy(comp(rng))); break;
      }
    }
    return r;
  };
  std::vector<aoi::Transition> ts;
  for (std::size_t q = 0; q < nq; ++q) ts.push_back({q, (q + 1) % nq, rate(rng), random_reset()});
  const std::size_t extra = nq + 1;
  for (std::size_t e = 0; e < extra; ++e) ts.push_back({state(rng), state(rng), rate(rng), random_reset()});
  return aoi::ShsModel(nq, n, std::move(ts));
}

inline bool is_stable(const aoi::ShsModel& m) {
  try {
    (void)aoi::stationary_moments(m, 1);
    return true;
  } catch (const aoi::UnstableError&) {
    return false;
  }
}

/// Canonical models plus seeded random stable ones.
inline std::vector<NamedModel> corpus() {
  std::vector<NamedModel> out{
      {"mm11(1,1,1)", aoi::mm11_abandonment(1, 1, 1)},
      {"mm11(1,1,0)", aoi::mm11_abandonment(1, 1, 0)},
      {"mm11(2,3,0.5)", aoi::mm11_abandonment(2, 3, 0.5)},
      {"line[1,2,3]", aoi::preemptive_line({1, 2, 3})},
      {"line[1,1,1]", aoi::preemptive_line({1, 1, 1})},
      {"line[5,5]", aoi::preemptive_line({5, 5})},
      {"line[0.7,4,1.3,2.2]", aoi::preemptive_line({0.7, 4, 1.3, 2.2})},
  };
  std::mt19937_64 rng(20240611);
  int found = 0;
  while (found < 6) {
    const std::size_t nq = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 3;
    auto m = random_model(rng, nq, n);
    if (!aoi::validate(m).empty() || !is_stable(m)) continue;
    out.push_back({"random#" + std::to_string(found), std::move(m)});
    ++found;
  }
  return out;
}

}  // namespace testsupport
