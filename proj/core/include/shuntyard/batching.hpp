#pragma once

// Batching: the standardized train on the top classification track is cut
// into consecutive batches of at most f groups, worked near-end first. Each
// batch restricts the learner's world to the top classification track plus
// the batch's destination tracks, which keeps per-batch state spaces small.
// Cutting is free — no moves are emitted.

#include <vector>

#include "shuntyard/yard.hpp"

namespace shuntyard {

struct Batch {
  std::vector<Group> groups;        // in train order, nearest the switch first
  std::vector<int> allowed_tracks;  // sorted: top classification track + destinations
};

// Splits the standardized state's train into ceil(h/f) batches of f groups
// (the last may be smaller). The state must be standardized: every group on
// track `num_departure`, fixed destinations only.
std::vector<Batch> make_batches(const YardState& standardized, int num_departure, int f);

// All legal moves within the batch's allowed tracks, in canonical order.
// `state` is the current full-width state (batch groups plus anything earlier
// batches already delivered onto the allowed departure tracks).
std::vector<Move> batch_action_universe(const Batch& batch, const YardState& state,
                                        const CostModel& cost);

}  // namespace shuntyard
