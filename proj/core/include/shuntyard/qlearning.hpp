#pragma once

// Tabular Q-learning over yard states. The table is sparse: a (state, action)
// pair has value 0 until the first update touches it, and the argmax treats
// the missing entries as real zero-valued candidates. Actions are indices
// into the canonical move enumeration for the environment's playable tracks,
// so a table only makes sense together with the environment it was trained
// on.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "shuntyard/rng.hpp"
#include "shuntyard/yard.hpp"

namespace shuntyard {

class QTable {
 public:
  // 0.0 for anything never written.
  double value(const std::string& state, std::uint32_t action) const;

  // Reference to the stored value, inserting a zero entry first when the
  // pair is new. The learning loop reads and writes through this.
  double& slot(const std::string& state, std::uint32_t action);

  // Max over all `action_count` actions, unwritten ones counting as 0.
  double max_value(const std::string& state, std::size_t action_count) const;

  // Argmax over all `action_count` actions; exact ties are broken uniformly
  // at random (unwritten actions participate as zeros).
  std::uint32_t argmax(const std::string& state, std::size_t action_count, Rng& rng) const;

  bool contains(const std::string& state) const { return rows_.contains(state); }
  std::size_t state_count() const { return rows_.size(); }
  std::size_t entry_count() const { return entries_; }

 private:
  struct Entry {
    std::uint32_t action;
    double q;
  };
  using Row = std::vector<Entry>;  // sorted by action

  std::unordered_map<std::string, Row> rows_;
  std::size_t entries_ = 0;
};

// One learning problem: an initial state, a cost model, and the subset of
// tracks moves may touch (empty = every track). Terminality ignores the
// track restriction; it is a property of the whole state.
class Environment {
 public:
  Environment(const YardState& initial, CostModel cost, int num_departure,
              std::vector<int> tracks_in_play = {});

  const YardState& initial_state() const { return initial_; }
  const CostModel& cost_model() const { return cost_; }
  int num_departure() const { return num_departure_; }
  const std::vector<int>& tracks_in_play() const { return tracks_; }
  int group_count() const { return group_count_; }

  bool terminal(const YardState& state) const;
  std::vector<Move> legal_moves(const YardState& state) const;

 private:
  YardState initial_;
  CostModel cost_;
  int num_departure_;
  std::vector<int> tracks_;
  int group_count_;
};

struct TrainConfig {
  std::uint64_t episodes = 500'000;
  double alpha = 0.1;
  double gamma = 0.99;
  double eps_initial = 1.0;
  double eps_decay = 0.9999888;
  double eps_min = 0.02;
  double bonus = 15.0;   // added to the reward of the move that finishes
  int step_cap = 0;      // per episode; <= 0 means 50 x group count
  std::uint64_t seed = 0;
};

struct EpisodeLog {
  std::uint64_t episode;
  double total_reward;
  std::uint32_t steps;
};

struct TrainResult {
  QTable table;
  std::vector<EpisodeLog> episodes;
};

// Negated move cost, plus the terminal bonus when the move finishes the job.
double step_reward(double move_cost, bool next_terminal, double bonus);
double step_reward(const Move& move, const YardState& next_state, int num_departure, double bonus);

// One temporal-difference update toward r + gamma * max_next.
double update_q(double q, double reward, double max_next, double alpha, double gamma);

double decay_epsilon(double eps, double eps_decay, double eps_min);

// Epsilon-greedy episodes from the environment's initial state. An episode
// ends on reaching a terminal state (bonus paid) or at the step cap (no
// bonus). Identical config (seed included) gives an identical result.
TrainResult train(const Environment& env, const TrainConfig& config);

struct RolloutResult {
  ShuntPlan plan;
  double cost = 0.0;
};

// Follows the table greedily (ties uniform at random from `seed`) until
// terminal. Throws when the step cap runs out first.
RolloutResult greedy_rollout(const QTable& table, const Environment& env, std::uint64_t seed,
                             int step_cap = 0);

}  // namespace shuntyard
