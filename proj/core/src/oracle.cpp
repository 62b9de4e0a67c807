#include "shuntyard/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>
#include <vector>

#include "compact.hpp"

namespace shuntyard {

namespace {

// Floating-point slack for path-cost comparisons. Move costs are nonnegative
// and small; sums stay well inside this resolution.
constexpr double kEps = 1e-9;

struct NodeRec {
  std::string key;
  std::int32_t parent;  // index into the node vector, -1 for the root
  Move via;
};

struct QEntry {
  double g;
  std::uint64_t seq;  // push order; ties in g expand first-in
  std::uint32_t node;
};

struct QOrder {
  bool operator()(const QEntry& a, const QEntry& b) const {
    if (a.g != b.g) return a.g > b.g;
    return a.seq > b.seq;
  }
};

ShuntPlan reconstruct(const std::vector<NodeRec>& nodes, std::uint32_t leaf, double cost) {
  ShuntPlan plan;
  for (const NodeRec* at = &nodes[leaf]; at->parent >= 0;
       at = &nodes[static_cast<std::size_t>(at->parent)])
    plan.moves.push_back(at->via);
  std::reverse(plan.moves.begin(), plan.moves.end());
  plan.total_cost = cost;
  plan.makespan = static_cast<int>(plan.moves.size());
  return plan;
}

}  // namespace

OracleResult optimal_cost(const YardInstance& inst, const SearchLimits& limits) {
  if (limits.max_expanded == 0 || limits.max_frontier == 0 || limits.time_budget_s <= 0.0)
    throw std::invalid_argument("search limits must all be positive");
  if (inst.sided != Sided::One)
    throw std::invalid_argument(
        "exact search handles one-sided instances; split two-sided instances first");
  if (!limits.allow_large && (group_count(inst.initial) > 8 || inst.num_tracks > 8))
    throw std::invalid_argument(
        "instance exceeds 8 groups or 8 tracks; the state space grows combinatorially — "
        "set SearchLimits::allow_large to search it anyway");

  using detail::CompactState;
  const auto start_time = std::chrono::steady_clock::now();

  std::vector<int> tracks(static_cast<std::size_t>(inst.num_tracks));
  for (int t = 0; t < inst.num_tracks; ++t) tracks[static_cast<std::size_t>(t)] = t;

  std::vector<NodeRec> nodes;
  nodes.push_back(NodeRec{encode_state(inst.initial), -1, Move{}});
  std::unordered_map<std::string, double> best;
  best.emplace(nodes[0].key, 0.0);

  std::priority_queue<QEntry, std::vector<QEntry>, QOrder> frontier;
  std::uint64_t seq = 0;
  frontier.push(QEntry{0.0, seq++, 0});

  OracleResult result;
  std::string scratch;
  while (!frontier.empty()) {
    const QEntry top = frontier.top();
    frontier.pop();
    if (top.g > best.at(nodes[top.node].key) + kEps) continue;  // superseded entry

    const CompactState state = detail::compact_parse(nodes[top.node].key);
    if (detail::compact_terminal(state, inst.num_departure)) {
      result.cost = top.g;
      result.plan = reconstruct(nodes, top.node, top.g);
      return result;
    }

    if (result.expanded >= limits.max_expanded)
      throw SearchLimitExceeded("exact search gave up after expanding " +
                                    std::to_string(result.expanded) + " states",
                                "max_expanded");
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    if (elapsed > limits.time_budget_s)
      throw SearchLimitExceeded("exact search exceeded its time budget of " +
                                    std::to_string(limits.time_budget_s) + " s",
                                "time_budget_s");
    ++result.expanded;

    const std::size_t actions = detail::compact_action_count(state, tracks);
    for (std::size_t a = 0; a < actions; ++a) {
      const Move mv = detail::compact_action_at(state, tracks, End::A, inst.cost, a);
      CompactState next = state;
      detail::compact_apply(next, mv);
      detail::compact_key_into(next, scratch);
      const double g2 = top.g + mv.cost;

      auto [slot, fresh] = best.try_emplace(scratch, g2);
      if (!fresh) {
        if (slot->second <= g2 + kEps) continue;
        slot->second = g2;
      }
      ++result.generated;
      if (frontier.size() >= limits.max_frontier)
        throw SearchLimitExceeded("exact search frontier outgrew " +
                                      std::to_string(limits.max_frontier) + " entries",
                                  "max_frontier");
      nodes.push_back(NodeRec{scratch, static_cast<std::int32_t>(top.node), mv});
      frontier.push(QEntry{g2, seq++, static_cast<std::uint32_t>(nodes.size() - 1)});
    }
  }
  throw std::runtime_error("no terminal state is reachable from the initial state");
}

double optimality_gap(double heuristic_cost, double optimal_cost) {
  if (optimal_cost < 0.0 || heuristic_cost < 0.0)
    throw std::invalid_argument("costs must be nonnegative");
  if (optimal_cost == 0.0) {
    if (heuristic_cost == 0.0) return 0.0;
    throw std::runtime_error("optimality gap undefined: optimal cost is 0 but heuristic paid " +
                             std::to_string(heuristic_cost));
  }
  return 100.0 * (heuristic_cost - optimal_cost) / optimal_cost;
}

}  // namespace shuntyard
