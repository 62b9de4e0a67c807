#pragma once

// Destination-only mirror of YardState used by the hot paths (training and
// search). A state is just per-track destination codes; everything a policy
// or a cost-ordered search needs — legality, terminality, successor states,
// canonical keys — is derivable from that plus the instance. Equivalence
// with the rich yard ops is pinned by property tests.

#include <cstdint>
#include <string>
#include <vector>

#include "shuntyard/yard.hpp"

namespace shuntyard::detail {

using DestCode = std::int16_t;  // >= 0: departure track index; kFlexible: flexible

struct CompactState {
  std::vector<std::vector<DestCode>> tracks;

  bool operator==(const CompactState&) const = default;
};

CompactState compact_from(const YardState& state);

// Same string as shuntyard::encode_state.
std::string compact_key(const CompactState& state);
void compact_key_into(const CompactState& state, std::string& out);

CompactState compact_parse(const std::string& key);

bool compact_terminal(const CompactState& state, int num_departure);
int compact_group_count(const CompactState& state);

// Deterministic action indexing over a fixed end: source tracks ascending
// (restricted to `tracks_in_play`, which must be sorted), block size
// ascending, destination tracks ascending. Matches enumerate_actions order.
std::size_t compact_action_count(const CompactState& state, const std::vector<int>& tracks_in_play);

Move compact_action_at(const CompactState& state, const std::vector<int>& tracks_in_play,
                       End end, const CostModel& cost, std::size_t index);

// In-place splice; the move is assumed legal (callers produce it via
// compact_action_at or validate beforehand).
void compact_apply(CompactState& state, const Move& move);

}  // namespace shuntyard::detail
