#pragma once

// Exact minimum-cost solver: uniform-cost search over the implicit graph of
// yard states, with duplicate detection on the canonical state encoding.
// Ground truth for optimality gaps on small instances.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "shuntyard/yard.hpp"

namespace shuntyard {

struct SearchLimits {
  std::size_t max_expanded = 2'000'000;
  std::size_t max_frontier = 4'000'000;
  double time_budget_s = 60.0;
  // The state count grows combinatorially with groups and tracks; inputs
  // beyond 8 of either are refused unless the caller opts in here.
  bool allow_large = false;
};

// Thrown when the search runs out of budget. `limit` names the field of
// SearchLimits that fired ("max_expanded", "max_frontier", "time_budget_s").
struct SearchLimitExceeded : std::runtime_error {
  SearchLimitExceeded(const std::string& what, std::string which)
      : std::runtime_error(what), limit(std::move(which)) {}
  std::string limit;
};

struct OracleResult {
  double cost = 0.0;
  ShuntPlan plan;          // one witness; replays to terminal at exactly `cost`
  std::size_t expanded = 0;
  std::size_t generated = 0;
};

// Cost of a cheapest move sequence from the instance's initial state to any
// terminal state, with a witness plan. One-sided instances only: split
// two-sided instances first and search each side separately. Equal-cost
// frontier entries are expanded in first-in order, so the witness is
// deterministic; only the cost is unique.
OracleResult optimal_cost(const YardInstance& inst, const SearchLimits& limits = {});

// 100 * (heuristic - optimal) / optimal. An optimal cost of zero only makes
// sense when the heuristic also paid nothing (gap 0); anything else throws.
double optimality_gap(double heuristic_cost, double optimal_cost);

}  // namespace shuntyard
