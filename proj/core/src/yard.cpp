#include "shuntyard/yard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "compact.hpp"

namespace shuntyard {

int group_count(const YardState& state) {
  std::size_t n = 0;
  for (const auto& track : state.tracks) n += track.size();
  return static_cast<int>(n);
}

CostModel CostModel::matrix(std::vector<std::vector<double>> end_a,
                            std::vector<std::vector<double>> end_b) {
  CostModel m;
  m.mode = Mode::Matrix;
  m.a = std::move(end_a);
  m.b = std::move(end_b);
  return m;
}

double CostModel::cost(int from, int to, End e) const {
  if (from == to) throw IllegalMove("move cost undefined for from == to");
  if (mode == Mode::IndexDistance) return std::abs(from - to);
  const auto& table = (e == End::A) ? a : b;
  if (table.empty())
    throw std::runtime_error(std::string("no cost table for end ") + end_name(e));
  const auto f = static_cast<std::size_t>(from);
  const auto t = static_cast<std::size_t>(to);
  if (f >= table.size() || t >= table[f].size())
    throw std::out_of_range("cost matrix index out of range");
  return table[f][t];
}

namespace {

bool mergeable(const Group& lhs, const Group& rhs) {
  return lhs.destination == rhs.destination;  // covers flexible==flexible too
}

Group merged(Group lhs, const Group& rhs) {
  lhs.id += '+';
  lhs.id += rhs.id;
  lhs.length += rhs.length;
  lhs.units += rhs.units;
  return lhs;
}

}  // namespace

YardState normalize_groups(const YardState& state) {
  YardState out;
  out.tracks.resize(state.tracks.size());
  for (std::size_t t = 0; t < state.tracks.size(); ++t) {
    auto& dst = out.tracks[t];
    for (const Group& g : state.tracks[t]) {
      if (!dst.empty() && mergeable(dst.back(), g)) {
        dst.back() = merged(std::move(dst.back()), g);
      } else {
        dst.push_back(g);
      }
    }
  }
  return out;
}

bool is_terminal(const YardState& state, int num_departure) {
  for (int t = 0; t < state.track_count(); ++t) {
    for (const Group& g : state.tracks[static_cast<std::size_t>(t)]) {
      if (g.flexible()) {
        if (t < num_departure) return false;
      } else if (g.destination != t) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<int> resolve_filter(const YardState& state,
                                const std::optional<std::vector<int>>& track_filter) {
  std::vector<int> tracks;
  if (track_filter) {
    tracks = *track_filter;
    std::sort(tracks.begin(), tracks.end());
    tracks.erase(std::unique(tracks.begin(), tracks.end()), tracks.end());
    for (int t : tracks)
      if (t < 0 || t >= state.track_count())
        throw std::out_of_range("track filter index out of range");
  } else {
    tracks.resize(static_cast<std::size_t>(state.track_count()));
    for (int t = 0; t < state.track_count(); ++t) tracks[static_cast<std::size_t>(t)] = t;
  }
  return tracks;
}

}  // namespace

std::vector<Move> enumerate_actions(const YardState& state, const CostModel& cost,
                                    const std::vector<End>& ends,
                                    const std::optional<std::vector<int>>& track_filter) {
  const std::vector<int> tracks = resolve_filter(state, track_filter);
  std::vector<Move> out;
  if (tracks.size() < 2) return out;
  for (End end : ends) {
    for (int src : tracks) {
      const auto h = static_cast<int>(state.tracks[static_cast<std::size_t>(src)].size());
      for (int m = 1; m <= h; ++m) {
        for (int dst : tracks) {
          if (dst == src) continue;
          out.push_back(Move{src, m, dst, end, cost.cost(src, dst, end)});
        }
      }
    }
  }
  return out;
}

std::pair<YardState, double> apply_move(const YardState& state, const Move& move,
                                        const CostModel& cost) {
  if (move.from < 0 || move.from >= state.track_count() || move.to < 0 ||
      move.to >= state.track_count())
    throw IllegalMove("move references a track outside the yard");
  if (move.from == move.to) throw IllegalMove("move source equals destination");
  const auto& src = state.tracks[static_cast<std::size_t>(move.from)];
  if (move.count < 1 || static_cast<std::size_t>(move.count) > src.size())
    throw IllegalMove("move count " + std::to_string(move.count) + " exceeds " +
                      std::to_string(src.size()) + " groups on track " +
                      std::to_string(move.from));
  const double c = cost.cost(move.from, move.to, move.end);

  YardState next = state;
  auto& s = next.tracks[static_cast<std::size_t>(move.from)];
  auto& d = next.tracks[static_cast<std::size_t>(move.to)];
  const auto m = static_cast<std::ptrdiff_t>(move.count);
  if (move.end == End::A) {
    d.insert(d.begin(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.begin() + m));
    s.erase(s.begin(), s.begin() + m);
  } else {
    d.insert(d.end(), std::make_move_iterator(s.end() - m), std::make_move_iterator(s.end()));
    s.erase(s.end() - m, s.end());
  }
  return {std::move(next), c};
}

ReplayResult replay_plan(const YardInstance& instance, const ShuntPlan& plan) {
  // Per-end queues, preserving list order, then interleaved by time step so
  // that concurrent two-sided execution is what actually gets validated.
  std::vector<std::size_t> queue_a, queue_b;
  for (std::size_t i = 0; i < plan.moves.size(); ++i) {
    if (plan.moves[i].end == End::A) {
      queue_a.push_back(i);
    } else {
      if (instance.sided == Sided::One)
        throw IllegalMove("end B move on a one-sided instance", static_cast<int>(i));
      queue_b.push_back(i);
    }
  }

  ReplayResult result;
  result.final_state = instance.initial;
  const std::size_t steps = std::max(queue_a.size(), queue_b.size());
  for (std::size_t s = 0; s < steps; ++s) {
    for (const auto* queue : {&queue_a, &queue_b}) {
      if (s >= queue->size()) continue;
      const std::size_t idx = (*queue)[s];
      try {
        auto [next, cost] = apply_move(result.final_state, plan.moves[idx], instance.cost);
        result.final_state = std::move(next);
        result.total_cost += cost;
      } catch (const IllegalMove& e) {
        throw IllegalMove("step " + std::to_string(idx) + ": " + e.what(),
                          static_cast<int>(idx));
      }
    }
  }
  result.makespan = static_cast<int>(instance.sided == Sided::Two
                                         ? steps
                                         : plan.moves.size());
  return result;
}

std::string encode_state(const YardState& state) {
  return detail::compact_key(detail::compact_from(state));
}

}  // namespace shuntyard
