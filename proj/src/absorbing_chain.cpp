#include "paging/absorbing_chain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "paging/error.hpp"
#include "paging/format.hpp"

namespace paging {

namespace {

constexpr double kStochasticTolerance = 1e-12;
constexpr double kPivotThreshold = 1e-12;

}  // namespace

void AbsorbingChain::validate(bool require_reachable) const {
  const int n = state_count();
  if (transitions.rows() != transitions.cols()) throw InvalidArgument("chain: transition matrix must be square");
  if (transient_count < 0 || transient_count > n) throw InvalidArgument("chain: transient_count out of range");
  if (!(step_time > 0.0) || !std::isfinite(step_time)) throw InvalidArgument("chain: step_time must be positive");
  if (transient_count == n && n > 0) throw InvalidArgument("chain: no absorbing state");
  if ((transitions.array() < 0.0).any() || !transitions.allFinite())
    throw InvalidArgument("chain: transition probabilities must be finite and nonnegative");
  for (int i = 0; i < n; ++i) {
    if (std::abs(transitions.row(i).sum() - 1.0) > kStochasticTolerance)
      throw InvalidArgument("chain: row " + std::to_string(i) + " does not sum to 1");
  }
  for (int i = transient_count; i < n; ++i) {
    if (transitions(i, i) != 1.0) throw InvalidArgument("chain: absorbing state " + std::to_string(i) + " is not a self-loop");
  }

  if (!require_reachable) return;

  // Backward reachability from the absorbing set.
  std::vector<bool> reaches(static_cast<std::size_t>(n), false);
  for (int i = transient_count; i < n; ++i) reaches[static_cast<std::size_t>(i)] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < transient_count; ++i) {
      if (reaches[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < n; ++j) {
        if (transitions(i, j) > 0.0 && reaches[static_cast<std::size_t>(j)]) {
          reaches[static_cast<std::size_t>(i)] = true;
          changed = true;
          break;
        }
      }
    }
  }
  for (int i = 0; i < transient_count; ++i) {
    if (!reaches[static_cast<std::size_t>(i)])
      throw InvalidArgument("chain: no absorbing state reachable from transient state " + std::to_string(i));
  }
}

Eigen::VectorXd expected_absorption_times(const AbsorbingChain& chain) {
  const int t = chain.transient_count;
  if (t == 0) return Eigen::VectorXd(0);
  const Eigen::MatrixXd fundamental_inverse = Eigen::MatrixXd::Identity(t, t) - chain.transient_block();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(fundamental_inverse);
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < kPivotThreshold)
    throw SingularSystem("chain: I - Q is numerically singular (absorption unreachable)");
  return chain.step_time * lu.solve(Eigen::VectorXd::Ones(t));
}

double expected_absorption_time(const AbsorbingChain& chain) {
  chain.validate(false);
  if (chain.transient_count == 0) return 0.0;
  return expected_absorption_times(chain)(0);
}

AbsorbingChain read_chain(std::istream& in) {
  AbsorbingChain chain;
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t\r")] != '#')
        return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("chain file: missing header line");
  {
    std::istringstream header(line);
    std::string count_text, step_text;
    if (!(header >> count_text >> step_text)) throw ParseError("chain file line 1: expected 'transient_count step_time'");
    chain.transient_count = static_cast<int>(parse_number(count_text));
    chain.step_time = parse_number(step_text);
  }
  std::vector<std::vector<double>> rows;
  while (next_line()) {
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    try {
      while (fields >> token) row.push_back(parse_number(token));
    } catch (const ParseError& e) {
      throw ParseError("chain file line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  chain.transitions.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw ParseError("chain file: row " + std::to_string(i) + " has wrong length");
    for (Eigen::Index j = 0; j < n; ++j) chain.transitions(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  chain.validate();
  return chain;
}

void write_chain(std::ostream& out, const AbsorbingChain& chain) {
  out << chain.transient_count << ' ' << format_number(chain.step_time) << '\n';
  for (Eigen::Index i = 0; i < chain.transitions.rows(); ++i) {
    for (Eigen::Index j = 0; j < chain.transitions.cols(); ++j) {
      if (j) out << ' ';
      out << format_number(chain.transitions(i, j));
    }
    out << '\n';
  }
}

void CarrierScenario::validate() const {
  if (carriers < 1) throw InvalidArgument("scenario: carriers must be >= 1");
  if (users < 1) throw InvalidArgument("scenario: users must be >= 1");
  if (static_cast<int>(location_prob.size()) != carriers)
    throw InvalidArgument("scenario: need one location probability per carrier");
  double total = 0.0;
  for (double p : location_prob) {
    if (!(p >= 0.0)) throw InvalidArgument("scenario: probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kStochasticTolerance) throw InvalidArgument("scenario: probabilities must sum to 1");
}

CarrierScenario CarrierScenario::uniform(int carriers, int users) {
  if (carriers < 1) throw InvalidArgument("scenario: carriers must be >= 1");
  return {carriers, users, std::vector<double>(static_cast<std::size_t>(carriers), 1.0 / carriers)};
}

AbsorbingChain concurrent_search_chain(const CarrierScenario& scenario, double step_time) {
  scenario.validate();
  std::vector<double> order = scenario.location_prob;
  std::sort(order.begin(), order.end(), std::greater<>());
  while (order.size() > 1 && order.back() == 0.0) order.pop_back();

  const int t = static_cast<int>(order.size());
  AbsorbingChain chain;
  chain.transient_count = t;
  chain.step_time = step_time;
  chain.transitions = Eigen::MatrixXd::Zero(t + 1, t + 1);
  double remaining = 1.0;
  for (int i = 0; i < t; ++i) {
    const double found = (i == t - 1) ? 1.0 : std::clamp(order[static_cast<std::size_t>(i)] / remaining, 0.0, 1.0);
    chain.transitions(i, t) = found;
    if (i + 1 < t) chain.transitions(i, i + 1) = 1.0 - found;
    remaining -= order[static_cast<std::size_t>(i)];
  }
  chain.transitions(t, t) = 1.0;
  chain.validate();
  return chain;
}

double sequential_page_messages(const CarrierScenario& scenario) {
  scenario.validate();
  return static_cast<double>(scenario.users) * scenario.carriers;
}

double concurrent_page_messages(const CarrierScenario& scenario) {
  scenario.validate();
  const bool two_by_two = scenario.carriers == 2 && scenario.users == 2 &&
                          std::abs(scenario.location_prob[0] - 0.5) <= kStochasticTolerance;
  if (!two_by_two)
    throw UnsupportedScenario("concurrent_page_messages: only two equiprobable carriers with two users are supported");
  std::vector<double> order = scenario.location_prob;
  std::sort(order.begin(), order.end(), std::greater<>());
  double per_user = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) per_user += static_cast<double>(i + 1) * order[i];
  return scenario.users * per_user;
}

double message_saving(const CarrierScenario& scenario) {
  const double seq = sequential_page_messages(scenario);
  return (seq - concurrent_page_messages(scenario)) / seq;
}

}  // namespace paging
