#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "shuntyard/instgen.hpp"
#include "shuntyard/preprocessing.hpp"
#include "shuntyard/rng.hpp"
#include "shuntyard/yard.hpp"
#include "support/phase_interpreter.hpp"

using namespace shuntyard;

namespace {

Group fixed(std::string id, int dest) { return Group{std::move(id), 1, dest, 1}; }
Group flex(std::string id) { return Group{std::move(id), 1, kFlexible, 1}; }

YardState state_of(std::vector<std::vector<Group>> tracks) {
  YardState s;
  s.tracks = std::move(tracks);
  return s;
}

// Departure 0-1, classification 2-4; one mixed track, one lone fixed group,
// one lone flexible. Exercises every phase except the flexible-head clear.
YardInstance mixed_instance() {
  YardInstance inst;
  inst.sided = Sided::One;
  inst.num_tracks = 5;
  inst.num_departure = 2;
  inst.cost = CostModel::index_distance();
  inst.initial = state_of({{},
                           {},
                           {fixed("a", 1), flex("x"), fixed("b", 0)},
                           {fixed("c", 1)},
                           {flex("e")}});
  inst.meta.name = "mixed";
  return inst;
}

std::vector<std::string> atom_ids(const std::vector<Group>& track) {
  // Merged ids are joined with '+'; split them back into the loaded atoms.
  std::vector<std::string> out;
  for (const auto& g : track) {
    std::size_t start = 0;
    while (start <= g.id.size()) {
      const auto plus = g.id.find('+', start);
      out.push_back(g.id.substr(start, plus - start));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("group roles are judged from position and kind") {
  const auto s = state_of({{fixed("p", 1), fixed("q", 0)},
                           {},
                           {flex("x"), fixed("a", 0), flex("y"), fixed("b", 1)},
                           {flex("z")},
                           {fixed("w", 0)}});
  const int k0 = 2;
  CHECK(classify_group(s, 0, 1, k0) == GroupClass::TailReady);
  CHECK(classify_group(s, 0, 0, k0) == GroupClass::Head);
  CHECK(classify_group(s, 2, 0, k0) == GroupClass::Head);
  CHECK(classify_group(s, 2, 1, k0) == GroupClass::Ordinary);
  CHECK(classify_group(s, 2, 2, k0) == GroupClass::MiddleBlocking);
  CHECK(classify_group(s, 2, 3, k0) == GroupClass::Ordinary);
  CHECK(classify_group(s, 3, 0, k0) == GroupClass::TailHome);  // tail beats head
  CHECK(classify_group(s, 4, 0, k0) == GroupClass::Head);  // unsatisfied single group leads
  CHECK_THROWS_AS(static_cast<void>(classify_group(s, 9, 0, k0)), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(classify_group(s, 1, 0, k0)), std::out_of_range);
}

TEST_CASE("head pairs are found among close classification heads only") {
  const int k0 = 2;
  SUBCASE("one qualifying pair, departure destination") {
    const auto s = state_of({{}, {}, {fixed("a", 1)}, {fixed("b", 1)}, {}});
    const auto pairs = find_head_pairs(s, k0, 3);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == HeadPair{2, 3, PairKind::U});
  }
  SUBCASE("threshold excludes distant pairs") {
    const auto s = state_of({{}, {}, {fixed("a", 1)}, {}, {}, {}, {fixed("b", 1)}});
    CHECK(find_head_pairs(s, k0, 3).empty());
    CHECK(find_head_pairs(s, k0, 5).size() == 1);
  }
  SUBCASE("sorted by distance before index") {
    const auto s = state_of({{}, {}, {fixed("a", 0)}, {fixed("b", 0)}, {fixed("c", 0)}});
    const auto pairs = find_head_pairs(s, k0, 3);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == HeadPair{2, 3, PairKind::U});
    CHECK(pairs[1] == HeadPair{3, 4, PairKind::U});
    CHECK(pairs[2] == HeadPair{2, 4, PairKind::U});
  }
  SUBCASE("flexible heads pair with each other, never with fixed ones") {
    const auto s = state_of({{}, {}, {flex("x")}, {fixed("a", 0)}, {flex("y")}});
    const auto pairs = find_head_pairs(s, k0, 3);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == HeadPair{2, 4, PairKind::F});
  }
  SUBCASE("departure heads never participate") {
    const auto s = state_of({{fixed("a", 1)}, {fixed("b", 1)}, {fixed("c", 1)}, {}});
    const auto pairs = find_head_pairs(s, /*num_departure=*/2, 3);
    CHECK(pairs.empty());
  }
}

TEST_CASE("the mixed yard standardizes to a two-group train for 3") {
  const auto inst = mixed_instance();
  const auto result = preprocess(inst.initial, inst.cost, inst.num_departure);

  CHECK(result.plan.total_cost == doctest::Approx(3.0));
  REQUIRE(result.plan.moves.size() == 3);
  CHECK(result.plan.tags ==
        std::vector<std::string>{"phase2", "phase4", "phase4"});

  // The lone fixed group rides over, merges, and the blocker round-trips.
  CHECK(result.plan.moves[0].from == 3);
  CHECK(result.plan.moves[0].count == 1);
  CHECK(result.plan.moves[0].to == 2);
  CHECK(result.plan.moves[1].from == 2);
  CHECK(result.plan.moves[1].count == 3);  // two merged units plus the blocker
  CHECK(result.plan.moves[1].to == 3);
  CHECK(result.plan.moves[2].from == 3);
  CHECK(result.plan.moves[2].count == 2);
  CHECK(result.plan.moves[2].to == 2);

  REQUIRE(result.standardized.tracks[2].size() == 2);
  CHECK(result.standardized.tracks[2][0].destination == 1);
  CHECK(result.standardized.tracks[2][0].units == 2);
  CHECK(result.standardized.tracks[2][1].destination == 0);
  CHECK(encode_state(result.standardized) == "||1,0||");

  // The physical moves replay legally and cost exactly the reported amount.
  const auto replay = replay_plan(inst, result.plan);
  CHECK(replay.total_cost == doctest::Approx(3.0));
  CHECK(atom_ids(replay.final_state.tracks[2]) == std::vector<std::string>{"c", "a", "b"});
  CHECK(atom_ids(replay.final_state.tracks[3]) == std::vector<std::string>{"x"});
  CHECK(atom_ids(replay.final_state.tracks[4]) == std::vector<std::string>{"e"});
}

TEST_CASE("satisfied yards standardize to nothing at no cost") {
  SUBCASE("all groups already home") {
    const auto s = state_of({{fixed("g1", 0)}, {fixed("g2", 1), fixed("g3", 1)}, {}, {}});
    const auto result = preprocess(s, CostModel::index_distance(), 2);
    CHECK(result.plan.moves.empty());
    CHECK(result.plan.total_cost == 0.0);
    for (const auto& track : result.standardized.tracks) CHECK(track.empty());
  }
  SUBCASE("a single unresolved group on the top classification track") {
    const auto s = state_of({{}, {}, {fixed("g", 0)}, {}});
    const auto result = preprocess(s, CostModel::index_distance(), 2);
    CHECK(result.plan.moves.empty());
    CHECK(result.plan.total_cost == 0.0);
    CHECK(encode_state(result.standardized) == "||0|");
  }
  SUBCASE("empty yard") {
    const auto result = preprocess(state_of({{}, {}, {}}), CostModel::index_distance(), 1);
    CHECK(result.plan.moves.empty());
    CHECK(result.plan.total_cost == 0.0);
  }
}

TEST_CASE("a flexible head on the train is parked next door") {
  const auto s = state_of({{}, {}, {flex("x"), fixed("a", 0)}, {}});
  const auto result = preprocess(s, CostModel::index_distance(), 2);
  REQUIRE(result.plan.moves.size() == 1);
  CHECK(result.plan.tags[0] == "phase4");
  CHECK(result.plan.moves[0].from == 2);
  CHECK(result.plan.moves[0].to == 3);
  CHECK(encode_state(result.standardized) == "||0|");
}

TEST_CASE("standardization rejects yards it cannot finish") {
  SUBCASE("fixed group on the wrong departure track") {
    const auto s = state_of({{fixed("g", 1)}, {}, {}, {}});
    CHECK_THROWS_WITH_AS(
        static_cast<void>(preprocess(s, CostModel::index_distance(), 2)),
        doctest::Contains("stranded"), std::runtime_error);
  }
  SUBCASE("flexible group on a departure track") {
    const auto s = state_of({{flex("x")}, {}, {}, {}});
    CHECK_THROWS_WITH_AS(
        static_cast<void>(preprocess(s, CostModel::index_distance(), 2)),
        doctest::Contains("stranded"), std::runtime_error);
  }
  SUBCASE("blocker with no side track to park on") {
    const auto s = state_of({{}, {}, {fixed("a", 0), flex("x"), fixed("b", 1)}});
    CHECK_THROWS_WITH_AS(
        static_cast<void>(preprocess(s, CostModel::index_distance(), 2)),
        doctest::Contains("second classification track"), std::runtime_error);
  }
  SUBCASE("a stranded group beneath a satisfied tail still counts") {
    const auto s = state_of({{fixed("g", 1), fixed("h", 0)}, {}, {}, {}});
    CHECK_THROWS_WITH_AS(
        static_cast<void>(preprocess(s, CostModel::index_distance(), 2)),
        doctest::Contains("stranded"), std::runtime_error);
  }
}

TEST_CASE("delta gates which merges happen") {
  const auto s = state_of({{}, {}, {fixed("a", 1)}, {}, {fixed("b", 1)}});
  const auto close = preprocess(s, CostModel::index_distance(), 2, 3);
  CHECK(close.plan.tags.front() == "phase2");

  // With delta 1 no pair qualifies; the cascade does the consolidation.
  const auto far = preprocess(s, CostModel::index_distance(), 2, 1);
  REQUIRE(!far.plan.tags.empty());
  for (const auto& tag : far.plan.tags) CHECK(tag != "phase2");
  CHECK(encode_state(far.standardized) == encode_state(close.standardized));
}

TEST_CASE("standardization matches the literal phase interpreter") {
  int checked = 0;
  for (const Scale scale : {Scale::Small, Scale::Medium}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto inst = generate_instance(scale, seed);
      const auto result = preprocess(inst.initial, inst.cost, inst.num_departure);
      const auto trace =
          testsupport::interpret_phases(inst.initial, inst.cost, inst.num_departure, 3);

      CHECK(encode_state(result.standardized) == encode_state(trace.standardized));
      CHECK(result.plan.total_cost == doctest::Approx(trace.c_p));
      CHECK(static_cast<int>(result.plan.moves.size()) == trace.moves);
      ++checked;
    }
  }
  CHECK(checked == 60);
}

TEST_CASE("standardized trains satisfy the advertised shape") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto inst = generate_instance(Scale::Small, seed);
    const auto result = preprocess(inst.initial, inst.cost, inst.num_departure);
    const int k0 = inst.num_departure;

    for (int t = 0; t < result.standardized.track_count(); ++t) {
      if (t == k0) continue;
      CHECK(result.standardized.tracks[static_cast<std::size_t>(t)].empty());
    }
    int units = 0;
    for (const auto& g : result.standardized.tracks[static_cast<std::size_t>(k0)]) {
      CHECK(!g.flexible());
      units += g.units;
    }
    CHECK(group_count(result.standardized) <= group_count(inst.initial));

    // Physical replay: legal, same price, and the train's as-loaded groups
    // sit at the head of the top classification track in standardized order.
    // Merged ids join with '+', so the joined sequences must match exactly.
    const auto replay = replay_plan(inst, result.plan);
    CHECK(replay.total_cost == doctest::Approx(result.plan.total_cost));
    std::string train_flat;
    for (const auto& g : result.standardized.tracks[static_cast<std::size_t>(k0)]) {
      if (!train_flat.empty()) train_flat += '+';
      train_flat += g.id;
    }
    const auto& physical = replay.final_state.tracks[static_cast<std::size_t>(k0)];
    REQUIRE(static_cast<int>(physical.size()) >= units);
    std::string physical_flat;
    for (int i = 0; i < units; ++i) {
      if (i > 0) physical_flat += '+';
      physical_flat += physical[static_cast<std::size_t>(i)].id;
    }
    CHECK(train_flat == physical_flat);
  }
}

TEST_CASE("standardization is deterministic") {
  const auto inst = generate_instance(Scale::Medium, 77);
  const auto a = preprocess(inst.initial, inst.cost, inst.num_departure);
  const auto b = preprocess(inst.initial, inst.cost, inst.num_departure);
  CHECK(encode_state(a.standardized) == encode_state(b.standardized));
  CHECK(a.plan.total_cost == b.plan.total_cost);
  REQUIRE(a.plan.moves.size() == b.plan.moves.size());
  for (std::size_t i = 0; i < a.plan.moves.size(); ++i) {
    CHECK(a.plan.moves[i].from == b.plan.moves[i].from);
    CHECK(a.plan.moves[i].count == b.plan.moves[i].count);
    CHECK(a.plan.moves[i].to == b.plan.moves[i].to);
  }
}

TEST_CASE("invalid arguments are rejected") {
  const auto s = state_of({{}, {}, {}});
  CHECK_THROWS_AS(static_cast<void>(preprocess(s, CostModel::index_distance(), 2, -1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(preprocess(s, CostModel::index_distance(), 5)),
                  std::invalid_argument);
}
