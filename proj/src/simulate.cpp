#include "aoi/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aoi/errors.hpp"
#include "aoi/parallel.hpp"
#include "aoi/rng.hpp"

namespace aoi {

void validate_config(const SimConfig& config) {
  if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) throw ConfigError("simulate: t_end must be positive");
  const double w = config.warmup_time();
  if (!(w >= 0.0)) throw ConfigError("simulate: warmup must be non-negative");
  if (!(config.t_end > w)) throw ConfigError("simulate: t_end must exceed warmup");
  if (config.replications < 1) throw ConfigError("simulate: need at least one replication");
  for (int m : config.orders) {
    if (m < 0) throw ConfigError("simulate: moment orders must be non-negative");
  }
  for (double s : config.s_values) {
    if (!std::isfinite(s)) throw ConfigError("simulate: MGF arguments must be finite");
  }
}

namespace {

struct OutgoingTable {
  std::vector<std::vector<std::size_t>> by_state;  // transition indices
  std::vector<std::vector<double>> cumulative;     // running rate sums
  std::vector<double> departure;
};

OutgoingTable outgoing(const ShsModel& model) {
  OutgoingTable t;
  const auto nq = model.num_states();
  t.by_state.resize(nq);
  t.cumulative.resize(nq);
  t.departure.assign(nq, 0.0);
  const auto& ts = model.transitions();
  for (std::size_t l = 0; l < ts.size(); ++l) {
    const auto q = ts[l].from;
    t.departure[q] += ts[l].rate;
    t.by_state[q].push_back(l);
    t.cumulative[q].push_back(t.departure[q]);
  }
  return t;
}

struct Replication {
  std::vector<double> occupancy;
  std::vector<double> moments;  // [k * n + j]
  std::vector<double> mgfs;
  std::optional<TimeHistogram> histogram;
  std::size_t events = 0;
};

Replication run_replication(const ShsModel& model, const OutgoingTable& table,
                            const SimConfig& config, std::size_t r,
                            std::optional<std::size_t> hist_component,
                            const std::vector<double>& edges) {
  const auto n = model.age_dim();
  const auto& ts = model.transitions();
  const double warmup = config.warmup_time();
  const double t_end = config.t_end;

  SplitMix64 rng(stream_seed(config.seed, r));
  SawtoothAccumulator acc(n, config.orders, config.s_values);
  Replication out;
  out.occupancy.assign(model.num_states(), 0.0);
  if (hist_component) out.histogram.emplace(edges);

  std::vector<double> x(n, 0.0);
  std::vector<double> next(n, 0.0);
  std::vector<double> shifted(n, 0.0);
  std::size_t q = 0;
  double t = 0.0;
  while (t < t_end) {
    const double hold = rng.exponential(table.departure[q]);
    const double t_next = std::min(t + hold, t_end);
    if (t_next > warmup) {
      const double start = std::max(t, warmup);
      const double tau = t_next - start;
      for (std::size_t j = 0; j < n; ++j) shifted[j] = x[j] + (start - t);
      acc.add_all(shifted, tau);
      out.occupancy[q] += tau;
      if (out.histogram) out.histogram->add_segment(shifted[*hist_component], tau);
    }
    if (t + hold >= t_end) break;
    t += hold;
    for (auto& xi : x) xi += hold;

    const auto& cum = table.cumulative[q];
    const double u = rng.uniform() * table.departure[q];
    auto pick = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    pick = std::min(pick, cum.size() - 1);
    const auto& tr = ts[table.by_state[q][pick]];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = tr.reset[j];
      switch (e.kind) {
        case AgeAssignment::Kind::Identity: next[j] = x[j]; break;
        case AgeAssignment::Kind::Fresh: next[j] = 0.0; break;
        case AgeAssignment::Kind::Copy: next[j] = x[e.source]; break;
      }
    }
    x.swap(next);
    q = tr.to;
    ++out.events;
  }

  double occ_sum = 0.0;
  for (double o : out.occupancy) occ_sum += o;
  for (auto& o : out.occupancy) o /= occ_sum;

  out.moments.resize(config.orders.size() * n);
  out.mgfs.resize(config.s_values.size() * n);
  for (std::size_t k = 0; k < config.orders.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) out.moments[k * n + j] = acc.moment_average(k, j);
  }
  for (std::size_t k = 0; k < config.s_values.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) out.mgfs[k * n + j] = acc.mgf_average(k, j);
  }
  return out;
}

std::vector<Replication> run_all(const ShsModel& model, const SimConfig& config,
                                 std::optional<std::size_t> hist_component,
                                 const std::vector<double>& edges) {
  require_valid(model);
  validate_config(config);
  const auto table = outgoing(model);
  std::vector<Replication> reps(config.replications);
  for_each_replication(config.replications, [&](std::size_t r) {
    reps[r] = run_replication(model, table, config, r, hist_component, edges);
  });
  return reps;
}

}  // namespace

SimEstimates simulate(const ShsModel& model, const SimConfig& config) {
  const auto reps = run_all(model, config, std::nullopt, {});
  const auto n = model.age_dim();
  const auto nq = model.num_states();
  const auto R = reps.size();

  SimEstimates est;
  est.orders = config.orders;
  est.s_values = config.s_values;
  std::vector<double> column(R);
  auto summarize = [&](auto&& get) {
    for (std::size_t r = 0; r < R; ++r) column[r] = get(reps[r]);
    return mean_and_stderr(column);
  };

  for (std::size_t q = 0; q < nq; ++q) {
    const auto ms = summarize([&](const Replication& rep) { return rep.occupancy[q]; });
    est.occupancy.push_back(ms.mean);
    est.occupancy_stderr.push_back(ms.stderr_);
  }
  est.moment_avg.assign(config.orders.size(), std::vector<double>(n));
  est.moment_stderr.assign(config.orders.size(), std::vector<double>(n));
  for (std::size_t k = 0; k < config.orders.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto ms = summarize([&](const Replication& rep) { return rep.moments[k * n + j]; });
      est.moment_avg[k][j] = ms.mean;
      est.moment_stderr[k][j] = ms.stderr_;
    }
  }
  est.mgf_avg.assign(config.s_values.size(), std::vector<double>(n));
  est.mgf_stderr.assign(config.s_values.size(), std::vector<double>(n));
  for (std::size_t k = 0; k < config.s_values.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto ms = summarize([&](const Replication& rep) { return rep.mgfs[k * n + j]; });
      est.mgf_avg[k][j] = ms.mean;
      est.mgf_stderr[k][j] = ms.stderr_;
    }
  }
  for (const auto& rep : reps) est.events += rep.events;
  return est;
}

EmpiricalDistribution empirical_distribution(const ShsModel& model, std::size_t component,
                                             const SimConfig& config, std::vector<double> edges) {
  if (component >= model.age_dim()) throw ConfigError("empirical_distribution: component out of range");
  TimeHistogram merged(edges);  // validates the grid
  SimConfig cfg = config;
  cfg.orders.clear();
  cfg.s_values.clear();
  const auto reps = run_all(model, cfg, component, edges);
  for (const auto& rep : reps) merged.merge(*rep.histogram);

  EmpiricalDistribution out;
  out.masses = merged.masses();
  out.densities = merged.densities();
  out.overflow = merged.total_time() > 0 ? merged.overflow() / merged.total_time() : 0.0;
  out.underflow = merged.total_time() > 0 ? merged.underflow() / merged.total_time() : 0.0;
  out.histogram = std::move(merged);
  return out;
}

}  // namespace aoi
