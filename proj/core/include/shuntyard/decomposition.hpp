#pragma once

// Two-sided instances are solved as two coupled one-sided subproblems: each
// classification track is cut into a prefix worked from switch end A and a
// suffix worked from switch end B. The B side is handed out mirrored (track
// order reversed) so any one-sided solver applies unchanged; its plan is
// retagged to end B when the two plans are recombined.

#include <utility>
#include <vector>

#include "shuntyard/yard.hpp"

namespace shuntyard {

struct SplitAllocation {
  // (A_i, B_i) per track index: how many consecutive groups go to each end.
  // A_i + B_i is always the track's group count.
  std::vector<std::pair<int, int>> per_track;
};

struct SplitResult {
  YardInstance a;  // one-sided, A-orientation, end-A cost table
  YardInstance b;  // one-sided, mirrored so local end A is the parent's end B
  SplitAllocation allocation;
};

// Alternate-Proportional Split: A_i = ceil(h_i/2), B_i = floor(h_i/2) on
// every classification track. `extra_to_b` flips which end receives the odd
// group. Departure-track contents (normally none) stay whole on side A.
SplitResult split_aps(const YardInstance& inst, bool extra_to_b = false);

// Rotating-Odd-Balance Split: even tracks split evenly; odd tracks alternate
// which end receives the extra group, starting with A, scanning
// classification tracks in increasing index order.
SplitResult split_robs(const YardInstance& inst);

// Reverses every track's group order, so position 0 switches between "nearest
// end A" and "nearest end B". Involutive; used to present B-side subproblems
// in standard orientation.
YardInstance mirror_view(const YardInstance& inst);

// Merges the two one-sided plans into one two-sided plan: plan_a's moves are
// stamped end A, plan_b's end B. Total cost adds; makespan is the larger
// per-end move count (the ends work concurrently).
ShuntPlan combine_plans(const ShuntPlan& plan_a, const ShuntPlan& plan_b);

}  // namespace shuntyard
