#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aoi/linalg.hpp"

namespace aoi {

/// How one age component is set when a transition fires.
///
/// `Identity` keeps x_j, `Fresh` resets x_j to zero and `Copy` sets x_j to
/// the pre-transition value of another component (0-based `source`).
struct AgeAssignment {
  enum class Kind { Identity, Fresh, Copy };

  Kind kind = Kind::Identity;
  std::size_t source = 0;

  static AgeAssignment identity() { return {Kind::Identity, 0}; }
  static AgeAssignment fresh() { return {Kind::Fresh, 0}; }
  static AgeAssignment copy(std::size_t from) { return {Kind::Copy, from}; }

  friend bool operator==(const AgeAssignment&, const AgeAssignment&) = default;
};

/// Linear age reset x' = x A stored symbolically, one entry per component.
/// The binary matrix can never hold more than one 1 per column.
using AgeResetMap = std::vector<AgeAssignment>;

/// Pair (A, Â) realized from a reset map.
struct AssignmentMatrices {
  DenseMatrix a;
  DenseMatrix a_hat;
};

AssignmentMatrices assignment_matrices(const AgeResetMap& reset, std::size_t n);

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  double rate = 0.0;
  AgeResetMap reset;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Age-of-information stochastic hybrid system: a finite CTMC over states
/// 0..num_states-1 whose transitions carry linear age resets.
class ShsModel {
 public:
  ShsModel(std::size_t num_states, std::size_t age_dim, std::vector<Transition> transitions);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t age_dim() const noexcept { return age_dim_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  /// Total outgoing rate d_q per state.
  std::vector<double> departure_rates() const;

  friend bool operator==(const ShsModel&, const ShsModel&) = default;

 private:
  std::size_t num_states_;
  std::size_t age_dim_;
  std::vector<Transition> transitions_;
};

/// Every violated invariant, each naming its location. Empty means valid.
std::vector<std::string> validate(const ShsModel& model);

/// Throws ValidationError when validate() reports anything.
void require_valid(const ShsModel& model);

/// Matrices of the stationary moment and MGF fixed-point equations.
struct BlockSystem {
  std::size_t num_states = 0;
  std::size_t age_dim = 0;
  std::vector<double> departure;  // d_q
  DenseMatrix d;                  // diag(d_q I_n)
  DenseMatrix r;                  // blocks sum of rate * A_l
  DenseMatrix r_hat;              // blocks sum of rate * Â_l
  std::vector<double> pi_rep;     // each pi_q repeated n times

  std::size_t size() const noexcept { return num_states * age_dim; }
};

BlockSystem build_block_system(const ShsModel& model, const std::vector<double>& pi);

/// M/M/1/1 queue with abandonment. x1 tracks updates entering service, x2
/// the destination monitor. alpha == 0 drops the abandonment transition.
ShsModel mm11_abandonment(double lambda, double mu, double alpha);

/// Preemptive line network with fake updates: one discrete state and one
/// self-transition per hop. Hop 0 delivers fresh updates to x1, hop l copies
/// x_l into x_{l+1}.
ShsModel preemptive_line(const std::vector<double>& mus);

}  // namespace aoi
