#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "shuntyard/instance_io.hpp"
#include "shuntyard/instgen.hpp"

using namespace shuntyard;

namespace {

const char* kTinyJson = R"({
  "sided": "one",
  "num_tracks": 4,
  "num_departure": 2,
  "cost": {"mode": "index_distance"},
  "tracks": [[], [], [{"id": "g1", "len": 1, "dest": 0}, {"id": "g2", "len": 1, "dest": 1}], []]
})";

}  // namespace

TEST_CASE("parse a minimal instance") {
  const auto inst = parse_instance(kTinyJson, "tiny");
  CHECK(inst.sided == Sided::One);
  CHECK(inst.num_tracks == 4);
  CHECK(inst.k0() == 2);
  CHECK(inst.kind(1) == TrackKind::Departure);
  CHECK(inst.kind(2) == TrackKind::Classification);
  REQUIRE(inst.initial.tracks[2].size() == 2);
  CHECK(inst.initial.tracks[2][0].destination == 0);
  CHECK(inst.initial.tracks[2][1].destination == 1);
  CHECK(inst.meta.name == "tiny");
}

TEST_CASE("parse normalizes adjacent same-destination groups") {
  const auto inst = parse_instance(R"({
    "sided": "one", "num_tracks": 3, "num_departure": 1,
    "cost": {"mode": "index_distance"},
    "tracks": [[], [{"id":"a","len":1,"dest":0},{"id":"b","len":2,"dest":0},{"id":"x","len":1,"dest":null}], []]
  })");
  REQUIRE(inst.initial.tracks[1].size() == 2);
  CHECK(inst.initial.tracks[1][0].id == "a+b");
  CHECK(inst.initial.tracks[1][0].length == 3);
  // Loaded groups are the physical replay baseline, merged or not.
  CHECK(inst.initial.tracks[1][0].units == 1);
  CHECK(inst.initial.tracks[1][1].flexible());
}

TEST_CASE("schema violations are collected, not reported one at a time") {
  const std::string bad = R"({
    "sided": "three", "num_tracks": 2, "num_departure": 1,
    "cost": {"mode": "index_distance"},
    "tracks": [[{"id":"a","len":0,"dest":5},{"id":"a","len":1,"dest":0}], []]
  })";
  try {
    parse_instance(bad);
    FAIL("expected schema violation");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("\"sided\"") != std::string::npos);
    CHECK(msg.find("len") != std::string::npos);
    CHECK(msg.find("destination 5") != std::string::npos);
    CHECK(msg.find("more than once") != std::string::npos);
  }
}

TEST_CASE("matrix cost tables are validated and round-trip") {
  const auto inst = parse_instance(R"({
    "sided": "two", "num_tracks": 2, "num_departure": 1,
    "cost": {"mode": "matrix", "A": [[0, 3], [4, 0]], "B": [[0, 1], [2, 0]]},
    "tracks": [[], [{"id":"a","len":1,"dest":0}]]
  })");
  CHECK(inst.cost.cost(0, 1, End::A) == 3);
  CHECK(inst.cost.cost(1, 0, End::B) == 2);

  const auto again = parse_instance(instance_to_json(inst));
  CHECK(again.cost.a == inst.cost.a);
  CHECK(again.cost.b == inst.cost.b);

  CHECK_THROWS(parse_instance(R"({
    "sided": "two", "num_tracks": 2, "num_departure": 1,
    "cost": {"mode": "matrix", "A": [[0, -3], [4, 0]], "B": [[0, 1], [2, 0]]},
    "tracks": [[], []]
  })"));
  CHECK_THROWS(parse_instance(R"({
    "sided": "two", "num_tracks": 2, "num_departure": 1,
    "cost": {"mode": "matrix", "A": [[0, 3], [4, 0]]},
    "tracks": [[], []]
  })"));
}

TEST_CASE("instance save/load round trip is structural identity") {
  const auto inst = generate_instance(Scale::Small, 42);
  const auto text = instance_to_json(inst);
  const auto again = parse_instance(text);
  CHECK(instance_to_json(again) == text);
  CHECK(encode_state(again.initial) == encode_state(inst.initial));
  CHECK(again.meta.scale == inst.meta.scale);
}

TEST_CASE("generation respects the per-scale ranges") {
  for (const Scale scale : {Scale::Small, Scale::Medium, Scale::Large}) {
    const auto spec = ScaleSpec::of(scale);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const auto inst = generate_instance(scale, seed);
      CHECK(inst.num_tracks >= spec.tracks_lo);
      CHECK(inst.num_tracks <= spec.tracks_hi);
      CHECK(inst.num_departure >= spec.departure_lo);
      CHECK(inst.num_departure <= std::min(inst.num_tracks - 2, spec.departure_cap));

      int fixed = 0, flexible = 0;
      for (int t = 0; t < inst.num_tracks; ++t) {
        // Groups only ever start on classification tracks.
        if (t < inst.num_departure) CHECK(inst.initial.tracks[static_cast<std::size_t>(t)].empty());
        for (const auto& g : inst.initial.tracks[static_cast<std::size_t>(t)]) {
          // Every sampled railcar has length 1, so summed lengths recover the
          // sampled counts even after adjacent groups merge at load.
          if (g.flexible()) flexible += g.length; else fixed += g.length;
          if (!g.flexible()) {
            CHECK(g.destination >= 0);
            CHECK(g.destination < inst.num_departure);
          }
        }
      }
      const int total = fixed + flexible;
      CHECK(total >= spec.groups_lo);
      CHECK(total <= spec.groups_hi);
      CHECK(fixed >= 1);
      CHECK(flexible <= std::min(total - 1, 10));
    }
  }
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
  const auto a1 = generate_instance(Scale::Medium, 7);
  const auto a2 = generate_instance(Scale::Medium, 7);
  CHECK(instance_to_json(a1) == instance_to_json(a2));

  const auto b = generate_instance(Scale::Medium, 8);
  CHECK(instance_to_json(a1) != instance_to_json(b));
}

TEST_CASE("generate_set derives distinct per-instance seeds and names") {
  const auto set = generate_set(Scale::Small, 5, 123);
  REQUIRE(set.size() == 5);
  std::set<std::string> names, bodies;
  for (const auto& inst : set) {
    names.insert(inst.meta.name);
    bodies.insert(instance_to_json(inst));
    CHECK(inst.meta.name.starts_with("small_123_"));
  }
  CHECK(names.size() == 5);
  CHECK(bodies.size() == 5);
}

TEST_CASE("scale labels follow the joint size thresholds") {
  CHECK(scale_for(5, 5) == Scale::Small);
  CHECK(scale_for(10, 20) == Scale::Small);
  CHECK(scale_for(5, 25) == Scale::Medium);
  CHECK(scale_for(15, 15) == Scale::Medium);
  CHECK(scale_for(25, 5) == Scale::Medium);
  CHECK(scale_for(15, 25) == Scale::Large);
  CHECK(scale_for(25, 15) == Scale::Large);
  CHECK(scale_for(40, 40) == Scale::Large);
}

TEST_CASE("two-sided conversion copies the cost table to both ends") {
  const auto os = generate_instance(Scale::Small, 3);
  const auto ts = to_two_sided(os);
  CHECK(ts.sided == Sided::Two);
  CHECK(ts.meta.name == os.meta.name + "_ts");
  CHECK(encode_state(ts.initial) == encode_state(os.initial));
  CHECK_THROWS_AS(to_two_sided(ts), std::invalid_argument);

  auto matrix = os;
  matrix.cost = CostModel::matrix({{0, 1}, {1, 0}});
  matrix.num_tracks = 2;  // keep the matrix square with the yard
  matrix.num_departure = 0;
  matrix.initial.tracks.resize(2);
  const auto mts = to_two_sided(matrix);
  CHECK(mts.cost.b == mts.cost.a);
}
