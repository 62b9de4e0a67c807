#include "shuntyard/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace shuntyard {

namespace {

CostModel one_sided_cost(const CostModel& parent, End local_end) {
  if (parent.mode == CostModel::Mode::IndexDistance) return CostModel::index_distance();
  return CostModel::matrix(local_end == End::A ? parent.a : parent.b);
}

SplitResult build_split(const YardInstance& inst, const std::vector<int>& a_counts) {
  if (inst.sided != Sided::Two)
    throw std::invalid_argument("splitting requires a two-sided instance");

  SplitResult out;
  out.a = inst;
  out.a.sided = Sided::One;
  out.a.cost = one_sided_cost(inst.cost, End::A);
  out.a.meta.name += "_A";
  out.b = inst;
  out.b.sided = Sided::One;
  out.b.cost = one_sided_cost(inst.cost, End::B);
  out.b.meta.name += "_B";

  const auto n = inst.initial.tracks.size();
  for (std::size_t t = 0; t < n; ++t) {
    const auto& track = inst.initial.tracks[t];
    const auto a_count = static_cast<std::size_t>(a_counts[t]);
    auto& ta = out.a.initial.tracks[t];
    auto& tb = out.b.initial.tracks[t];
    ta.assign(track.begin(), track.begin() + static_cast<std::ptrdiff_t>(a_count));
    // B keeps the suffix, mirrored: its first group is the one nearest end B.
    tb.assign(track.rbegin(), track.rend() - static_cast<std::ptrdiff_t>(a_count));
    out.allocation.per_track.emplace_back(static_cast<int>(a_count),
                                          static_cast<int>(track.size() - a_count));
  }
  return out;
}

std::vector<int> whole_departure_tracks(const YardInstance& inst) {
  std::vector<int> counts(inst.initial.tracks.size());
  for (int t = 0; t < inst.num_departure && t < inst.num_tracks; ++t)
    counts[static_cast<std::size_t>(t)] =
        static_cast<int>(inst.initial.tracks[static_cast<std::size_t>(t)].size());
  return counts;
}

}  // namespace

SplitResult split_aps(const YardInstance& inst, bool extra_to_b) {
  std::vector<int> a_counts = whole_departure_tracks(inst);
  for (int t = inst.num_departure; t < inst.num_tracks; ++t) {
    const int h = static_cast<int>(inst.initial.tracks[static_cast<std::size_t>(t)].size());
    a_counts[static_cast<std::size_t>(t)] = extra_to_b ? h / 2 : (h + 1) / 2;
  }
  return build_split(inst, a_counts);
}

SplitResult split_robs(const YardInstance& inst) {
  std::vector<int> a_counts = whole_departure_tracks(inst);
  int tau = 0;
  for (int t = inst.num_departure; t < inst.num_tracks; ++t) {
    const int h = static_cast<int>(inst.initial.tracks[static_cast<std::size_t>(t)].size());
    if (h % 2 == 0) {
      a_counts[static_cast<std::size_t>(t)] = h / 2;
    } else {
      a_counts[static_cast<std::size_t>(t)] = tau == 0 ? (h + 1) / 2 : h / 2;
      tau ^= 1;
    }
  }
  return build_split(inst, a_counts);
}

YardInstance mirror_view(const YardInstance& inst) {
  YardInstance out = inst;
  for (auto& track : out.initial.tracks) std::reverse(track.begin(), track.end());
  return out;
}

ShuntPlan combine_plans(const ShuntPlan& plan_a, const ShuntPlan& plan_b) {
  ShuntPlan out;
  out.moves.reserve(plan_a.moves.size() + plan_b.moves.size());
  for (Move mv : plan_a.moves) {
    mv.end = End::A;
    out.moves.push_back(mv);
  }
  for (Move mv : plan_b.moves) {
    mv.end = End::B;
    out.moves.push_back(mv);
  }
  if (!plan_a.tags.empty() || !plan_b.tags.empty()) {
    out.tags.resize(out.moves.size());
    std::copy(plan_a.tags.begin(), plan_a.tags.end(), out.tags.begin());
    std::copy(plan_b.tags.begin(), plan_b.tags.end(),
              out.tags.begin() + static_cast<std::ptrdiff_t>(plan_a.moves.size()));
  }
  out.total_cost = plan_a.total_cost + plan_b.total_cost;
  out.makespan = static_cast<int>(std::max(plan_a.moves.size(), plan_b.moves.size()));
  return out;
}

}  // namespace shuntyard
