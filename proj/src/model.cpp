#include "aoi/model.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "aoi/errors.hpp"

namespace aoi {

AssignmentMatrices assignment_matrices(const AgeResetMap& reset, std::size_t n) {
  if (reset.size() != n) {
    throw ValidationError({"reset map has length " + std::to_string(reset.size()) +
                           ", expected " + std::to_string(n)});
  }
  AssignmentMatrices out{DenseMatrix(n, n), DenseMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const auto& e = reset[j];
    switch (e.kind) {
      case AgeAssignment::Kind::Identity:
        out.a(j, j) = 1.0;
        break;
      case AgeAssignment::Kind::Fresh:
        out.a_hat(j, j) = 1.0;
        break;
      case AgeAssignment::Kind::Copy:
        if (e.source >= n) {
          throw ValidationError({"copy source " + std::to_string(e.source + 1) +
                                 " out of range for component " + std::to_string(j + 1)});
        }
        out.a(e.source, j) = 1.0;
        break;
    }
  }
  return out;
}

ShsModel::ShsModel(std::size_t num_states, std::size_t age_dim,
                   std::vector<Transition> transitions)
    : num_states_(num_states), age_dim_(age_dim), transitions_(std::move(transitions)) {}

std::vector<double> ShsModel::departure_rates() const {
  std::vector<double> d(num_states_, 0.0);
  for (const auto& t : transitions_) {
    if (t.from < num_states_ && std::isfinite(t.rate) && t.rate > 0.0) d[t.from] += t.rate;
  }
  return d;
}

std::vector<std::string> validate(const ShsModel& model) {
  std::vector<std::string> out;
  const auto nq = model.num_states();
  const auto n = model.age_dim();
  if (nq == 0) out.emplace_back("model has no discrete states");
  if (n == 0) out.emplace_back("model has age dimension 0");

  const auto& ts = model.transitions();
  for (std::size_t l = 0; l < ts.size(); ++l) {
    const auto& t = ts[l];
    const auto where = "transition " + std::to_string(l);
    if (t.from >= nq) out.push_back(where + ": from-state " + std::to_string(t.from) + " out of range");
    if (t.to >= nq) out.push_back(where + ": to-state " + std::to_string(t.to) + " out of range");
    if (!std::isfinite(t.rate)) {
      out.push_back("non-finite rate at " + where);
    } else if (t.rate <= 0.0) {
      out.push_back("non-positive rate at " + where);
    }
    if (t.reset.size() != n) {
      out.push_back(where + ": reset length " + std::to_string(t.reset.size()) +
                    " differs from age_dim " + std::to_string(n));
    }
    for (std::size_t j = 0; j < t.reset.size(); ++j) {
      const auto& e = t.reset[j];
      if (e.kind == AgeAssignment::Kind::Copy && e.source >= n) {
        out.push_back(where + ": component " + std::to_string(j + 1) + " copies from " +
                      std::to_string(e.source + 1) + ", outside 1.." + std::to_string(n));
      }
    }
  }

  const auto d = model.departure_rates();
  for (std::size_t q = 0; q < nq; ++q) {
    if (d[q] <= 0.0) out.push_back("state " + std::to_string(q) + " has no outgoing transition");
  }
  return out;
}

void require_valid(const ShsModel& model) {
  auto v = validate(model);
  if (!v.empty()) throw ValidationError(std::move(v));
}

BlockSystem build_block_system(const ShsModel& model, const std::vector<double>& pi) {
  require_valid(model);
  const auto nq = model.num_states();
  const auto n = model.age_dim();
  if (pi.size() != nq) {
    throw ValidationError({"stationary vector has length " + std::to_string(pi.size()) +
                           ", expected " + std::to_string(nq)});
  }

  BlockSystem bs;
  bs.num_states = nq;
  bs.age_dim = n;
  bs.departure = model.departure_rates();
  const auto size = nq * n;
  bs.d = DenseMatrix(size, size);
  bs.r = DenseMatrix(size, size);
  bs.r_hat = DenseMatrix(size, size);
  bs.pi_rep.assign(size, 0.0);

  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t k = 0; k < n; ++k) {
      bs.d(q * n + k, q * n + k) = bs.departure[q];
      bs.pi_rep[q * n + k] = pi[q];
    }
  }
  for (const auto& t : model.transitions()) {
    const auto [a, a_hat] = assignment_matrices(t.reset, n);
    const auto r0 = t.from * n;
    const auto c0 = t.to * n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bs.r(r0 + i, c0 + j) += t.rate * a(i, j);
        bs.r_hat(r0 + i, c0 + j) += t.rate * a_hat(i, j);
      }
    }
  }
  return bs;
}

ShsModel mm11_abandonment(double lambda, double mu, double alpha) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("mm11: lambda must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mm11: mu must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("mm11: alpha must be non-negative");

  using A = AgeAssignment;
  std::vector<Transition> ts;
  // arrival to an idle server: x1 <- 0
  ts.push_back({0, 1, lambda, {A::fresh(), A::identity()}});
  // service completion: the monitor inherits the delivered update's age
  ts.push_back({1, 0, mu, {A::identity(), A::copy(0)}});
  if (alpha > 0.0) ts.push_back({1, 0, alpha, {A::identity(), A::identity()}});
  return ShsModel(2, 2, std::move(ts));
}

ShsModel preemptive_line(const std::vector<double>& mus) {
  if (mus.empty()) throw std::invalid_argument("preemptive_line: empty rate list");
  const auto n = mus.size();
  std::vector<Transition> ts;
  ts.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (!(mus[l] > 0.0) || !std::isfinite(mus[l])) {
      throw std::invalid_argument("preemptive_line: rate " + std::to_string(l) + " must be positive");
    }
    AgeResetMap reset(n, AgeAssignment::identity());
    reset[l] = l == 0 ? AgeAssignment::fresh() : AgeAssignment::copy(l - 1);
    ts.push_back({0, 0, mus[l], std::move(reset)});
  }
  return ShsModel(1, n, std::move(ts));
}

}  // namespace aoi
