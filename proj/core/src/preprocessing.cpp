#include "shuntyard/preprocessing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shuntyard {

GroupClass classify_group(const YardState& state, int track, int position, int num_departure) {
  if (track < 0 || track >= state.track_count())
    throw std::out_of_range("track index out of range");
  const auto& groups = state.tracks[static_cast<std::size_t>(track)];
  if (position < 0 || static_cast<std::size_t>(position) >= groups.size())
    throw std::out_of_range("group position out of range");

  const Group& g = groups[static_cast<std::size_t>(position)];
  const bool tail = static_cast<std::size_t>(position) + 1 == groups.size();
  if (tail) {
    if (track < num_departure && !g.flexible() && g.destination == track)
      return GroupClass::TailReady;
    if (track >= num_departure && g.flexible()) return GroupClass::TailHome;
  }
  if (position == 0) return GroupClass::Head;
  if (!tail && g.flexible()) return GroupClass::MiddleBlocking;
  return GroupClass::Ordinary;
}

std::vector<HeadPair> find_head_pairs(const YardState& state, int num_departure, int delta) {
  std::vector<HeadPair> out;
  const int n = state.track_count();
  for (int i = num_departure; i < n; ++i) {
    const auto& ti = state.tracks[static_cast<std::size_t>(i)];
    if (ti.empty()) continue;
    const Group& a = ti.front();
    for (int j = i + 1; j < n && j - i < delta; ++j) {
      const auto& tj = state.tracks[static_cast<std::size_t>(j)];
      if (tj.empty()) continue;
      const Group& b = tj.front();
      if (a.flexible() && b.flexible()) {
        out.push_back(HeadPair{i, j, PairKind::F});
      } else if (!a.flexible() && a.destination == b.destination) {
        out.push_back(HeadPair{i, j, PairKind::U});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const HeadPair& x, const HeadPair& y) {
    if (x.j - x.i != y.j - y.i) return x.j - x.i < y.j - y.i;
    return x.i < y.i;
  });
  return out;
}

namespace {

bool satisfied_tail(const YardState& state, int track, int num_departure) {
  const auto& groups = state.tracks[static_cast<std::size_t>(track)];
  if (groups.empty()) return false;
  const GroupClass cls =
      classify_group(state, track, static_cast<int>(groups.size()) - 1, num_departure);
  return cls == GroupClass::TailReady || cls == GroupClass::TailHome;
}

}  // namespace

PreprocessResult preprocess(const YardState& state, const CostModel& cost, int num_departure,
                            int delta) {
  if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
  const int n = state.track_count();
  if (num_departure < 0 || num_departure > n)
    throw std::invalid_argument("num_departure out of range");
  const int k0 = num_departure;

  PreprocessResult out;
  YardState work = normalize_groups(state);

  // Executes one logical move on `work`, recording it with physical unit
  // counts so the emitted plan replays against the original (unmerged) state.
  auto log_move = [&](int from, int logical_m, int to, const char* phase) {
    const auto& src = work.tracks[static_cast<std::size_t>(from)];
    int physical = 0;
    for (int g = 0; g < logical_m; ++g) physical += src[static_cast<std::size_t>(g)].units;
    const double c = cost.cost(from, to, End::A);
    out.plan.moves.push_back(Move{from, physical, to, End::A, c});
    out.plan.tags.emplace_back(phase);
    out.plan.total_cost += c;
    work = normalize_groups(
        apply_move(work, Move{from, logical_m, to, End::A, c}, cost).first);
  };

  // Phase 1: satisfied tails are done — drop them until the tail no longer
  // qualifies (dropping one can expose another).
  for (int t = 0; t < n; ++t) {
    while (satisfied_tail(work, t, k0)) work.tracks[static_cast<std::size_t>(t)].pop_back();
  }

  // No later phase touches departure tracks, so anything still on one can
  // never reach its destination.
  for (int t = 0; t < k0; ++t) {
    const auto& track = work.tracks[static_cast<std::size_t>(t)];
    if (!track.empty())
      throw std::runtime_error("cannot standardize: group '" + track.back().id +
                               "' is stranded on departure track " + std::to_string(t));
  }

  // Phase 2: merge the closest like-destined heads, rescanning after each
  // merge since every merge exposes a new head.
  while (true) {
    const auto pairs = find_head_pairs(work, k0, delta);
    if (pairs.empty()) break;
    const HeadPair top = pairs.front();
    if (top.kind == PairKind::U) {
      log_move(top.j, 1, top.i, "phase2");  // toward the departure tracks
    } else {
      log_move(top.i, 1, top.j, "phase2");  // away from them
    }
  }

  // Phase 3: cascade nonempty classification tracks downward, then land the
  // pile on the top classification track.
  std::vector<int> ys;
  for (int t = k0; t < n; ++t)
    if (!work.tracks[static_cast<std::size_t>(t)].empty()) ys.push_back(t);
  for (std::size_t v = ys.size(); v-- > 1;) {
    const int m = static_cast<int>(work.tracks[static_cast<std::size_t>(ys[v])].size());
    log_move(ys[v], m, ys[v - 1], "phase3");
  }
  if (!ys.empty() && ys[0] != k0) {
    const int m = static_cast<int>(work.tracks[static_cast<std::size_t>(ys[0])].size());
    log_move(ys[0], m, k0, "phase3");
  }

  // Phase 4: clear flexible groups off the train. The head goes straight to
  // the next classification track; each middle blocker rides out with its
  // prefix and the fixed groups come back, one blocker per round trip.
  if (k0 < n && !work.tracks[static_cast<std::size_t>(k0)].empty()) {
    auto require_side_track = [&] {
      if (k0 + 1 >= n)
        throw std::runtime_error(
            "cannot standardize: flexible groups on the top classification track need a "
            "second classification track to be parked on");
    };
    if (work.tracks[static_cast<std::size_t>(k0)].front().flexible()) {
      require_side_track();
      log_move(k0, 1, k0 + 1, "phase4");
      work.tracks[static_cast<std::size_t>(k0) + 1].clear();  // parked, resolved
    }
    while (true) {
      int blocker = -1;
      const auto& train = work.tracks[static_cast<std::size_t>(k0)];
      for (std::size_t p = 1; p + 1 < train.size(); ++p) {
        if (train[p].flexible()) {
          blocker = static_cast<int>(p);
          break;
        }
      }
      if (blocker < 0) break;
      require_side_track();
      log_move(k0, blocker + 1, k0 + 1, "phase4");
      log_move(k0 + 1, blocker, k0, "phase4");
      work.tracks[static_cast<std::size_t>(k0) + 1].clear();  // parked, resolved
    }
  }

  // Phase 5: the side tracks only hold parked groups now; retire them.
  for (int t = k0 + 1; t < n; ++t) work.tracks[static_cast<std::size_t>(t)].clear();

  if (k0 < n) {
    for (const Group& g : work.tracks[static_cast<std::size_t>(k0)]) {
      if (g.flexible())
        throw std::logic_error("standardization left a flexible group on the train");
    }
  }

  out.plan.makespan = static_cast<int>(out.plan.moves.size());
  out.standardized = std::move(work);
  return out;
}

}  // namespace shuntyard
