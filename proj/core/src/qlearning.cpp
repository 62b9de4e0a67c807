#include "shuntyard/qlearning.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "compact.hpp"

namespace shuntyard {

namespace {

struct EntryOrder {
  template <typename E>
  bool operator()(const E& e, std::uint32_t a) const {
    return e.action < a;
  }
};

}  // namespace

double QTable::value(const std::string& state, std::uint32_t action) const {
  const auto it = rows_.find(state);
  if (it == rows_.end()) return 0.0;
  const Row& row = it->second;
  const auto pos = std::lower_bound(row.begin(), row.end(), action, EntryOrder{});
  return (pos != row.end() && pos->action == action) ? pos->q : 0.0;
}

double& QTable::slot(const std::string& state, std::uint32_t action) {
  Row& row = rows_[state];
  auto pos = std::lower_bound(row.begin(), row.end(), action, EntryOrder{});
  if (pos == row.end() || pos->action != action) {
    pos = row.insert(pos, Entry{action, 0.0});
    ++entries_;
  }
  return pos->q;
}

double QTable::max_value(const std::string& state, std::size_t action_count) const {
  const auto it = rows_.find(state);
  if (it == rows_.end() || it->second.empty()) return 0.0;
  const Row& row = it->second;
  double best = row.front().q;
  for (const Entry& e : row) best = std::max(best, e.q);
  if (row.size() < action_count) best = std::max(best, 0.0);
  return best;
}

std::uint32_t QTable::argmax(const std::string& state, std::size_t action_count, Rng& rng) const {
  if (action_count == 0) throw std::invalid_argument("argmax over an empty action set");
  const auto it = rows_.find(state);
  if (it == rows_.end() || it->second.empty())
    return static_cast<std::uint32_t>(rng.bounded(action_count));

  const Row& row = it->second;
  double best = row.front().q;
  for (const Entry& e : row) best = std::max(best, e.q);
  const std::size_t missing = action_count - std::min(row.size(), action_count);
  if (missing > 0) best = std::max(best, 0.0);

  std::size_t written_ties = 0;
  for (const Entry& e : row) written_ties += (e.q == best) ? 1 : 0;
  const std::size_t ties = written_ties + ((missing > 0 && best == 0.0) ? missing : 0);

  std::uint64_t pick = rng.bounded(ties);
  if (pick < written_ties) {
    for (const Entry& e : row) {
      if (e.q != best) continue;
      if (pick == 0) return e.action;
      --pick;
    }
  } else {
    pick -= written_ties;  // among actions absent from the row, in index order
    std::size_t ri = 0;
    for (std::uint32_t a = 0;; ++a) {
      if (ri < row.size() && row[ri].action == a) {
        ++ri;
        continue;
      }
      if (pick == 0) return a;
      --pick;
    }
  }
  throw std::logic_error("argmax tie bookkeeping is inconsistent");
}

Environment::Environment(const YardState& initial, CostModel cost, int num_departure,
                         std::vector<int> tracks_in_play)
    : initial_(initial),
      cost_(std::move(cost)),
      num_departure_(num_departure),
      tracks_(std::move(tracks_in_play)) {
  const int n = static_cast<int>(initial_.tracks.size());
  if (n < 2) throw std::invalid_argument("environment needs at least two tracks");
  if (num_departure_ < 1 || num_departure_ >= n)
    throw std::invalid_argument("num_departure must leave both a departure and a classification track");
  if (tracks_.empty()) {
    tracks_.resize(static_cast<std::size_t>(n));
    std::iota(tracks_.begin(), tracks_.end(), 0);
  } else {
    std::sort(tracks_.begin(), tracks_.end());
    tracks_.erase(std::unique(tracks_.begin(), tracks_.end()), tracks_.end());
    for (const int t : tracks_)
      if (t < 0 || t >= n) throw std::invalid_argument("playable track index out of range");
  }
  if (cost_.mode == CostModel::Mode::Matrix) {
    if (static_cast<int>(cost_.a.size()) < n)
      throw std::invalid_argument("cost matrix does not cover the yard");
    for (const auto& r : cost_.a)
      if (static_cast<int>(r.size()) < n)
        throw std::invalid_argument("cost matrix does not cover the yard");
  }
  group_count_ = shuntyard::group_count(initial_);
}

bool Environment::terminal(const YardState& state) const {
  return is_terminal(state, num_departure_);
}

std::vector<Move> Environment::legal_moves(const YardState& state) const {
  return enumerate_actions(state, cost_, {End::A}, tracks_);
}

double step_reward(double move_cost, bool next_terminal, double bonus) {
  return -move_cost + (next_terminal ? bonus : 0.0);
}

double step_reward(const Move& move, const YardState& next_state, int num_departure, double bonus) {
  return step_reward(move.cost, is_terminal(next_state, num_departure), bonus);
}

double update_q(double q, double reward, double max_next, double alpha, double gamma) {
  return q + alpha * (reward + gamma * max_next - q);
}

double decay_epsilon(double eps, double eps_decay, double eps_min) {
  return std::max(eps_min, eps * eps_decay);
}

namespace {

void check_config(const TrainConfig& c) {
  if (!(c.alpha > 0.0) || c.alpha > 1.0) throw std::invalid_argument("alpha must be in (0, 1]");
  if (c.gamma < 0.0 || !(c.gamma < 1.0)) throw std::invalid_argument("gamma must be in [0, 1)");
  if (c.eps_initial < 0.0 || c.eps_initial > 1.0)
    throw std::invalid_argument("eps_initial must be in [0, 1]");
  if (!(c.eps_decay > 0.0) || c.eps_decay > 1.0)
    throw std::invalid_argument("eps_decay must be in (0, 1]");
  if (c.eps_min < 0.0 || c.eps_min > c.eps_initial)
    throw std::invalid_argument("eps_min must be in [0, eps_initial]");
  if (c.bonus < 0.0) throw std::invalid_argument("bonus must be nonnegative");
}

std::uint32_t effective_cap(int configured, int groups) {
  if (configured > 0) return static_cast<std::uint32_t>(configured);
  return static_cast<std::uint32_t>(50 * std::max(1, groups));
}

}  // namespace

TrainResult train(const Environment& env, const TrainConfig& config) {
  check_config(config);
  TrainResult out;
  const int k0 = env.num_departure();
  const std::vector<int>& in_play = env.tracks_in_play();
  const detail::CompactState root = detail::compact_from(env.initial_state());
  const std::uint32_t cap = effective_cap(config.step_cap, env.group_count());

  Rng rng(config.seed);
  double eps = config.eps_initial;
  out.episodes.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(config.episodes, 1u << 20)));

  detail::CompactState cur;
  std::string cur_key, next_key;
  for (std::uint64_t e = 0; e < config.episodes; ++e) {
    cur = root;
    detail::compact_key_into(cur, cur_key);
    double total = 0.0;
    std::uint32_t steps = 0;
    while (steps < cap) {
      if (detail::compact_terminal(cur, k0)) break;
      const std::size_t n_actions = detail::compact_action_count(cur, in_play);
      if (n_actions == 0) break;  // no playable track can move; give up on the episode

      std::uint32_t a;
      if (rng.uniform01() < eps) {
        a = static_cast<std::uint32_t>(rng.bounded(n_actions));
      } else {
        a = out.table.argmax(cur_key, n_actions, rng);
      }

      const Move move = detail::compact_action_at(cur, in_play, End::A, env.cost_model(), a);
      detail::compact_apply(cur, move);  // cur is now the successor
      const bool done = detail::compact_terminal(cur, k0);
      const double r = step_reward(move.cost, done, config.bonus);
      detail::compact_key_into(cur, next_key);
      const double max_next =
          done ? 0.0 : out.table.max_value(next_key, detail::compact_action_count(cur, in_play));

      double& q = out.table.slot(cur_key, a);
      q = update_q(q, r, max_next, config.alpha, config.gamma);

      total += r;
      ++steps;
      cur_key.swap(next_key);
    }
    out.episodes.push_back(EpisodeLog{e, total, steps});
    eps = decay_epsilon(eps, config.eps_decay, config.eps_min);
  }
  return out;
}

RolloutResult greedy_rollout(const QTable& table, const Environment& env, std::uint64_t seed,
                             int step_cap) {
  const int k0 = env.num_departure();
  const std::vector<int>& in_play = env.tracks_in_play();
  const std::uint32_t cap = effective_cap(step_cap, env.group_count());

  Rng rng(seed);
  detail::CompactState cur = detail::compact_from(env.initial_state());
  std::string key;
  RolloutResult out;
  std::uint32_t steps = 0;
  while (!detail::compact_terminal(cur, k0)) {
    if (steps >= cap)
      throw std::runtime_error("greedy rollout hit the step cap (" + std::to_string(cap) +
                               ") before reaching a terminal state");
    const std::size_t n_actions = detail::compact_action_count(cur, in_play);
    if (n_actions == 0)
      throw std::runtime_error("greedy rollout reached a state with no legal moves");
    detail::compact_key_into(cur, key);
    const std::uint32_t a = table.argmax(key, n_actions, rng);
    Move move = detail::compact_action_at(cur, in_play, End::A, env.cost_model(), a);
    detail::compact_apply(cur, move);
    out.cost += move.cost;
    out.plan.moves.push_back(std::move(move));
    ++steps;
  }
  out.plan.total_cost = out.cost;
  out.plan.makespan = static_cast<int>(out.plan.moves.size());
  return out;
}

}  // namespace shuntyard
