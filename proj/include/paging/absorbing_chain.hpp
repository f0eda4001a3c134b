#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace paging {

/// Discrete-time absorbing Markov chain with states ordered transient-first.
/// Every transition takes `step_time` time units.
struct AbsorbingChain {
  int transient_count = 0;
  Eigen::MatrixXd transitions;
  double step_time = 1.0;

  int state_count() const { return static_cast<int>(transitions.rows()); }

  /// Throws InvalidArgument unless rows are stochastic (1e-12) and absorbing
  /// states are self-loops. With `require_reachable`, absorption must also be
  /// reachable from every transient state.
  void validate(bool require_reachable = true) const;

  /// Transient-to-transient block Q.
  auto transient_block() const { return transitions.topLeftCorner(transient_count, transient_count); }
};

/// Expected time to absorption from every transient state: step_time * (I - Q)^-1 1,
/// obtained from one LU solve with partial pivoting. Throws SingularSystem when a
/// pivot falls below 1e-12 in magnitude.
Eigen::VectorXd expected_absorption_times(const AbsorbingChain& chain);

/// Expected absorption time starting from transient state 0 (0 if there is none).
/// An unreachable absorbing set surfaces as SingularSystem from the solve.
double expected_absorption_time(const AbsorbingChain& chain);

/// Plain-text chain: first line `transient_count step_time`, then one
/// whitespace-separated row per state.
AbsorbingChain read_chain(std::istream& in);
void write_chain(std::ostream& out, const AbsorbingChain& chain);

/// Users spread over carriers; a user sits on carrier i with probability
/// location_prob[i], independently of the others.
struct CarrierScenario {
  int carriers = 2;
  int users = 2;
  std::vector<double> location_prob;

  void validate() const;
  static CarrierScenario uniform(int carriers, int users);
};

/// Concurrent search for one user, reconstructed as an absorbing chain.
///
/// The user is paged on one carrier per step, most likely carrier first.
/// Transient state i means "about to page the (i+1)-th most likely carrier";
/// from it the user is found (absorbed) with the conditional probability
///   p_(i) / (1 - p_(0) - ... - p_(i-1))
/// and otherwise the search moves on to state i+1. With two equally likely
/// carriers this is
///
///        S0 --0.5--> found
///        S0 --0.5--> S1 --1--> found
///
/// whose expected absorption time is 1.5 paging units.
AbsorbingChain concurrent_search_chain(const CarrierScenario& scenario, double step_time = 1.0);

/// Expected paging messages for the sequential (broadcast) scheme. A mobile
/// listens to one carrier only, so every user's page is duplicated onto the
/// paging channel of every carrier: users * carriers messages whatever the
/// placement. Two users on two carriers cost 4.
double sequential_page_messages(const CarrierScenario& scenario);

/// Expected paging messages for concurrent search, where each user is paged
/// carrier by carrier in probability order and the search stops once found.
/// Only the two-carrier, two-user, equiprobable case is supported; anything
/// else throws UnsupportedScenario. That case costs 2 * (1 * 0.5 + 2 * 0.5) = 3.
double concurrent_page_messages(const CarrierScenario& scenario);

/// Fraction of sequential messages saved by concurrent search (0.25 for 4 vs 3).
double message_saving(const CarrierScenario& scenario);

}  // namespace paging
