#pragma once

// Yard model: tracks holding ordered railcar groups, block moves between
// tracks, per-move costs, plan replay. Everything downstream (search,
// learning, decomposition) is built on these types.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shuntyard {

// Destination value for groups that may settle on any classification track.
inline constexpr int kFlexible = -1;

enum class End : std::uint8_t { A, B };
enum class Sided : std::uint8_t { One, Two };
enum class TrackKind : std::uint8_t { Departure, Classification };

inline char end_name(End e) { return e == End::A ? 'A' : 'B'; }

// A block of railcars that shares one destination and is always moved as a
// unit. `units` counts how many original (as-loaded) groups were merged into
// this one; plans emitted against the original instance need physical counts.
struct Group {
  std::string id;
  int length = 1;
  int destination = kFlexible;  // departure track index, or kFlexible
  int units = 1;

  bool flexible() const { return destination == kFlexible; }
};

// Per-track group sequences. Position 0 is the group nearest switch end A;
// the back of each vector is the dead end (one-sided) or switch end B.
struct YardState {
  std::vector<std::vector<Group>> tracks;

  int track_count() const { return static_cast<int>(tracks.size()); }
};

int group_count(const YardState& state);

struct CostModel {
  enum class Mode { IndexDistance, Matrix };

  Mode mode = Mode::IndexDistance;
  std::vector<std::vector<double>> a;  // Matrix mode, end A
  std::vector<std::vector<double>> b;  // Matrix mode, end B (two-sided only)

  static CostModel index_distance() { return CostModel{}; }
  static CostModel matrix(std::vector<std::vector<double>> end_a,
                          std::vector<std::vector<double>> end_b = {});

  // Cost of relocating a block from `from` to `to` via switch end `e`.
  // Independent of how many groups are in the block. Throws on from == to.
  double cost(int from, int to, End e) const;
};

// One shunting move: `count` head groups of `from` (with respect to `end`)
// are placed, order preserved, at the head of `to`.
struct Move {
  int from = 0;
  int count = 0;
  int to = 0;
  End end = End::A;
  double cost = 0.0;
};

// Ordered move list plus the two reported aggregates. `tags` is either empty
// or parallel to `moves`; solvers use it to label preprocessing phases and
// batch boundaries.
struct ShuntPlan {
  std::vector<Move> moves;
  std::vector<std::string> tags;
  double total_cost = 0.0;
  int makespan = 0;
};

struct InstanceMeta {
  std::string name;
  std::string scale;  // empty when unknown; recomputed from sizes on demand
  std::uint64_t seed = 0;
};

// Immutable problem description. Tracks 0..num_departure-1 are departure
// tracks; num_departure..num_tracks-1 are classification tracks, with
// num_departure itself being the "top" classification track k0.
struct YardInstance {
  Sided sided = Sided::One;
  int num_tracks = 0;
  int num_departure = 0;
  CostModel cost;
  YardState initial;
  InstanceMeta meta;

  int k0() const { return num_departure; }
  TrackKind kind(int track) const {
    return track < num_departure ? TrackKind::Departure : TrackKind::Classification;
  }
};

// Thrown when a move cannot be executed. `step` is the 0-based index within
// the plan being replayed, or -1 for a standalone move.
struct IllegalMove : std::runtime_error {
  IllegalMove(const std::string& what, int step_index = -1)
      : std::runtime_error(what), step(step_index) {}
  int step;
};

// Merges adjacent groups that are interchangeable: equal fixed destinations,
// or both flexible. Merged ids are joined with '+', lengths and unit counts
// add up. Order is otherwise preserved.
YardState normalize_groups(const YardState& state);

// True when every fixed-destination group sits on its departure track and
// every flexible group sits on some classification track.
bool is_terminal(const YardState& state, int num_departure);

// All legal moves: for each permitted end, each nonempty source track i
// (within the filter, when given), each block size m in 1..h_i, each
// destination j != i (within the filter). Costs are filled in from `cost`.
std::vector<Move> enumerate_actions(const YardState& state, const CostModel& cost,
                                    const std::vector<End>& ends,
                                    const std::optional<std::vector<int>>& track_filter = std::nullopt);

// Executes one move, returning the successor state and the move's cost.
// Throws IllegalMove if the source lacks `count` groups, from == to, or a
// track index is out of range.
std::pair<YardState, double> apply_move(const YardState& state, const Move& move,
                                        const CostModel& cost);

struct ReplayResult {
  YardState final_state;
  double total_cost = 0.0;
  int makespan = 0;
};

// Replays a plan against the instance's initial state. Two-sided plans are
// split into per-end sequences and interleaved by time step; makespan is the
// larger per-end move count. Costs are recomputed from the instance's cost
// model. Throws IllegalMove (with the offending step index) on the first
// move that cannot be executed.
ReplayResult replay_plan(const YardInstance& instance, const ShuntPlan& plan);

// Canonical textual encoding of a state: per-track destination sequences,
// '*' for flexible groups, ',' between groups, '|' between tracks. Group ids
// and lengths are excluded so interchangeable groups share an encoding.
std::string encode_state(const YardState& state);

}  // namespace shuntyard
