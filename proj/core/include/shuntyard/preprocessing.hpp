#pragma once

// Standardization: a five-phase move sequence that takes an arbitrary
// one-sided state to a layout where every unresolved group has a fixed
// destination and sits on the top classification track. Satisfied groups are
// dropped along the way (they rest where they are), like-destined head
// groups within a small track distance get merged, everything cascades onto
// the top classification track, and flexible groups are parked one track
// over. The accumulated move cost is the standardization's price tag.

#include <cstdint>
#include <vector>

#include "shuntyard/yard.hpp"

namespace shuntyard {

// Role of one group within a state, judged from its position and kind.
//  - TailReady: tail of a departure track it is destined for.
//  - TailHome: flexible tail already resting on a classification track.
//  - Head: first group of its track (and not a satisfied tail).
//  - MiddleBlocking: flexible group strictly between head and tail.
//  - Ordinary: everything else.
enum class GroupClass : std::uint8_t { TailReady, TailHome, Head, MiddleBlocking, Ordinary };

GroupClass classify_group(const YardState& state, int track, int position, int num_departure);

enum class PairKind : std::uint8_t { U, F };  // shared fixed dest / both flexible

// Two classification-track head groups with the same destination, close
// enough (j - i < delta) that merging them is worth a move.
struct HeadPair {
  int i = 0;
  int j = 0;
  PairKind kind = PairKind::U;

  bool operator==(const HeadPair&) const = default;
};

// All head pairs among classification tracks, sorted by (j - i, i)
// nondecreasing — the order in which merges are applied.
std::vector<HeadPair> find_head_pairs(const YardState& state, int num_departure, int delta);

struct PreprocessResult {
  // Full-width state; only track k0 can be nonempty, holding fixed-destination
  // groups only. Merged groups carry summed `units` for physical translation.
  YardState standardized;
  // Physical moves (unit counts, replayable against the input state), one
  // phase tag per move; total_cost is the standardization cost.
  ShuntPlan plan;
};

// Runs the five phases. Throws when the state cannot be standardized: a
// group stranded on a departure track that no phase will ever touch, or
// flexible groups to clear with no second classification track to hold them.
PreprocessResult preprocess(const YardState& state, const CostModel& cost, int num_departure,
                            int delta = 3);

}  // namespace shuntyard
