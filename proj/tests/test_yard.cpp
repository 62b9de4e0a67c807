#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "shuntyard/rng.hpp"
#include "shuntyard/yard.hpp"

using namespace shuntyard;

namespace {

Group fixed(std::string id, int dest, int len = 1) { return Group{std::move(id), len, dest, 1}; }
Group flex(std::string id, int len = 1) { return Group{std::move(id), len, kFlexible, 1}; }

YardState state_of(std::vector<std::vector<Group>> tracks) {
  YardState s;
  s.tracks = std::move(tracks);
  return s;
}

std::vector<std::string> ids_of(const std::vector<Group>& track) {
  std::vector<std::string> out;
  for (const auto& g : track) out.push_back(g.id);
  return out;
}

// Two departure tracks (0, 1), two classification tracks (2, 3); track 2
// holds g1 bound for 0 under g2 bound for 1. Used throughout as the smallest
// interesting yard.
YardInstance tiny_instance() {
  YardInstance inst;
  inst.sided = Sided::One;
  inst.num_tracks = 4;
  inst.num_departure = 2;
  inst.cost = CostModel::index_distance();
  inst.initial = state_of({{}, {}, {fixed("g1", 0), fixed("g2", 1)}, {}});
  inst.meta.name = "tiny";
  return inst;
}

YardState random_state(Rng& rng, int tracks, int departure, int groups) {
  YardState s;
  s.tracks.resize(static_cast<std::size_t>(tracks));
  for (int k = 0; k < groups; ++k) {
    Group g;
    g.id = "r" + std::to_string(k);
    const bool is_flex = rng.bounded(3) == 0;
    g.destination = is_flex ? kFlexible : rng.range(0, departure - 1);
    const int t = rng.range(0, tracks - 1);
    s.tracks[static_cast<std::size_t>(t)].push_back(std::move(g));
  }
  return s;
}

}  // namespace

TEST_CASE("normalize merges adjacent groups with one destination") {
  const auto raw = state_of({{fixed("g1", 0), fixed("g2", 0), fixed("g3", 1)}});
  const auto norm = normalize_groups(raw);
  REQUIRE(norm.tracks[0].size() == 2);
  CHECK(norm.tracks[0][0].id == "g1+g2");
  CHECK(norm.tracks[0][0].length == 2);
  CHECK(norm.tracks[0][0].units == 2);
  CHECK(norm.tracks[0][0].destination == 0);
  CHECK(norm.tracks[0][1].id == "g3");
}

TEST_CASE("normalize leaves non-adjacent equal destinations alone") {
  const auto raw = state_of({{fixed("g1", 0), flex("x"), fixed("g2", 0)}});
  const auto norm = normalize_groups(raw);
  CHECK(norm.tracks[0].size() == 3);
  CHECK(ids_of(norm.tracks[0]) == std::vector<std::string>{"g1", "x", "g2"});
}

TEST_CASE("normalize merges adjacent flexible groups but never across kinds") {
  const auto raw = state_of({{flex("x"), flex("y"), fixed("g1", 0)},
                             {fixed("g2", 1), flex("z")}});
  const auto norm = normalize_groups(raw);
  REQUIRE(norm.tracks[0].size() == 2);
  CHECK(norm.tracks[0][0].id == "x+y");
  CHECK(norm.tracks[0][0].flexible());
  CHECK(norm.tracks[0][0].units == 2);
  CHECK(norm.tracks[1].size() == 2);
}

TEST_CASE("normalize of empty tracks is a no-op") {
  const auto norm = normalize_groups(state_of({{}, {}, {}}));
  CHECK(norm.tracks.size() == 3);
  CHECK(group_count(norm) == 0);
}

TEST_CASE("terminal placement checks") {
  // Everything home: fixed groups on their departure tracks, flexibles on
  // classification tracks.
  CHECK(is_terminal(state_of({{fixed("a", 0)}, {fixed("b", 1)}, {flex("x")}}), 2));
  // Fixed group parked on a classification track.
  CHECK_FALSE(is_terminal(state_of({{}, {}, {fixed("a", 0)}}), 2));
  // Flexible group parked on a departure track.
  CHECK_FALSE(is_terminal(state_of({{flex("x")}, {}, {}}), 2));
  // Fixed group on the wrong departure track.
  CHECK_FALSE(is_terminal(state_of({{fixed("b", 1)}, {}, {}}), 2));
  // Empty yard is trivially terminal.
  CHECK(is_terminal(state_of({{}, {}}), 1));
}

TEST_CASE("enumerate_actions counts and order") {
  const CostModel cost = CostModel::index_distance();
  const auto s = state_of({{}, {}, {fixed("g1", 0), fixed("g2", 1)}, {}});

  const auto all = enumerate_actions(s, cost, {End::A});
  REQUIRE(all.size() == 6);  // h=2 block sizes x 3 other tracks
  // Deterministic order: source ascending, block size ascending, destination ascending.
  CHECK(all[0].from == 2);
  CHECK(all[0].count == 1);
  CHECK(all[0].to == 0);
  CHECK(all[0].cost == 2);
  CHECK(all[1].to == 1);
  CHECK(all[2].to == 3);
  CHECK(all[3].count == 2);

  const auto filtered = enumerate_actions(s, cost, {End::A}, std::vector<int>{2, 0});
  REQUIRE(filtered.size() == 2);
  CHECK(filtered[0].count == 1);
  CHECK(filtered[1].count == 2);
  CHECK(filtered[0].to == 0);

  CHECK(enumerate_actions(state_of({{}, {}, {}}), cost, {End::A}).empty());
}

TEST_CASE("enumerate_actions count law on random states") {
  Rng rng(7);
  const CostModel cost = CostModel::index_distance();
  for (int trial = 0; trial < 50; ++trial) {
    const int tracks = rng.range(2, 9);
    const auto s = random_state(rng, tracks, 1, rng.range(0, 12));
    const auto moves = enumerate_actions(s, cost, {End::A});
    CHECK(moves.size() == static_cast<std::size_t>(group_count(s)) *
                              static_cast<std::size_t>(tracks - 1));
  }
}

TEST_CASE("apply_move splices blocks in order") {
  const CostModel cost = CostModel::index_distance();
  const auto s = state_of({{}, {}, {fixed("g1", 0), fixed("g2", 1)}, {}});

  SUBCASE("whole track to a neighbour") {
    const auto [next, c] = apply_move(s, Move{2, 2, 1, End::A}, cost);
    CHECK(c == 1);
    CHECK(next.tracks[2].empty());
    CHECK(ids_of(next.tracks[1]) == std::vector<std::string>{"g1", "g2"});
  }
  SUBCASE("single head group") {
    const auto [next, c] = apply_move(s, Move{2, 1, 0, End::A}, cost);
    CHECK(c == 2);
    CHECK(ids_of(next.tracks[0]) == std::vector<std::string>{"g1"});
    CHECK(ids_of(next.tracks[2]) == std::vector<std::string>{"g2"});
  }
  SUBCASE("moved block lands ahead of existing groups") {
    const auto base = state_of({{fixed("b", 0)}, {fixed("a", 0)}});
    const auto [next, c] = apply_move(base, Move{1, 1, 0, End::A}, CostModel::index_distance());
    CHECK(c == 1);
    CHECK(ids_of(next.tracks[0]) == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("apply_move at end B works on the other side") {
  const CostModel cost = CostModel::index_distance();
  const auto s = state_of({{}, {fixed("x", 0), fixed("y", 0), fixed("z", 0)}});
  // From end B the head groups are z then y; the block keeps its internal
  // order and lands at the B-side head of the destination.
  const auto [next, c] = apply_move(s, Move{1, 2, 0, End::B}, cost);
  CHECK(c == 1);
  CHECK(ids_of(next.tracks[1]) == std::vector<std::string>{"x"});
  CHECK(ids_of(next.tracks[0]) == std::vector<std::string>{"y", "z"});
}

TEST_CASE("apply_move rejects bad moves") {
  const CostModel cost = CostModel::index_distance();
  const auto s = state_of({{}, {fixed("a", 0)}});
  CHECK_THROWS_AS(apply_move(s, Move{1, 2, 0, End::A}, cost), IllegalMove);
  CHECK_THROWS_AS(apply_move(s, Move{1, 0, 0, End::A}, cost), IllegalMove);
  CHECK_THROWS_AS(apply_move(s, Move{1, 1, 1, End::A}, cost), IllegalMove);
  CHECK_THROWS_AS(apply_move(s, Move{1, 1, 7, End::A}, cost), IllegalMove);
}

TEST_CASE("moves conserve groups, preserve order and reverse cleanly") {
  Rng rng(99);
  const CostModel cost = CostModel::index_distance();
  for (int trial = 0; trial < 200; ++trial) {
    const int tracks = rng.range(2, 8);
    auto s = random_state(rng, tracks, 1, rng.range(1, 10));
    const auto moves = enumerate_actions(s, cost, {End::A});
    if (moves.empty()) continue;
    const Move m = moves[rng.bounded(moves.size())];

    const auto before_ids = [&] {
      std::vector<std::string> all;
      for (const auto& t : s.tracks)
        for (const auto& g : t) all.push_back(g.id);
      std::sort(all.begin(), all.end());
      return all;
    }();

    const auto [mid, c1] = apply_move(s, m, cost);
    // Conservation: same multiset of groups.
    auto after_ids = std::vector<std::string>{};
    for (const auto& t : mid.tracks)
      for (const auto& g : t) after_ids.push_back(g.id);
    std::sort(after_ids.begin(), after_ids.end());
    CHECK(after_ids == before_ids);

    // Reversibility: moving the same block back restores the state.
    const auto [back, c2] = apply_move(mid, Move{m.to, m.count, m.from, m.end}, cost);
    CHECK(encode_state(back) == encode_state(s));
    CHECK(c1 == c2);
  }
}

TEST_CASE("replay of the tiny two-move plan") {
  const auto inst = tiny_instance();
  ShuntPlan plan;
  plan.moves = {Move{2, 2, 1, End::A}, Move{1, 1, 0, End::A}};
  const auto result = replay_plan(inst, plan);
  CHECK(result.total_cost == 2);
  CHECK(result.makespan == 2);
  CHECK(is_terminal(result.final_state, inst.num_departure));
}

TEST_CASE("replay reports the offending step") {
  const auto inst = tiny_instance();
  ShuntPlan plan;
  plan.moves = {Move{2, 2, 1, End::A}, Move{2, 1, 0, End::A}};  // track 2 is empty by then
  try {
    replay_plan(inst, plan);
    FAIL("expected IllegalMove");
  } catch (const IllegalMove& e) {
    CHECK(e.step == 1);
  }
}

TEST_CASE("replay rejects end B on a one-sided instance") {
  const auto inst = tiny_instance();
  ShuntPlan plan;
  plan.moves = {Move{2, 1, 3, End::B}};
  CHECK_THROWS_AS(replay_plan(inst, plan), IllegalMove);
}

TEST_CASE("empty plan replays to the initial state") {
  const auto inst = tiny_instance();
  const auto result = replay_plan(inst, ShuntPlan{});
  CHECK(result.total_cost == 0);
  CHECK(result.makespan == 0);
  CHECK(encode_state(result.final_state) == encode_state(inst.initial));
}

TEST_CASE("state encoding drops ids and lengths, keeps destinations") {
  const auto a = state_of({{}, {fixed("g1", 0), flex("x")}, {fixed("g9", 11, 4)}});
  CHECK(encode_state(a) == "|0,*|11");
  const auto b = state_of({{}, {fixed("zz", 0, 3), flex("other")}, {fixed("w", 11)}});
  CHECK(encode_state(a) == encode_state(b));
  CHECK(encode_state(state_of({{}, {}})) == "|");
}

TEST_CASE("cost model variants") {
  const auto index = CostModel::index_distance();
  CHECK(index.cost(2, 0, End::A) == 2);
  CHECK(index.cost(0, 2, End::B) == 2);
  CHECK_THROWS_AS(index.cost(1, 1, End::A), IllegalMove);

  const auto m = CostModel::matrix({{0, 5}, {7, 0}}, {{0, 1}, {2, 0}});
  CHECK(m.cost(0, 1, End::A) == 5);
  CHECK(m.cost(1, 0, End::A) == 7);
  CHECK(m.cost(0, 1, End::B) == 1);

  const auto one_sided = CostModel::matrix({{0, 5}, {7, 0}});
  CHECK_THROWS(one_sided.cost(0, 1, End::B));
}
