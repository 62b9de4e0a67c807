#include "shuntyard/instgen.hpp"

#include <algorithm>
#include <stdexcept>

#include "shuntyard/rng.hpp"

namespace shuntyard {

const char* scale_name(Scale s) {
  switch (s) {
    case Scale::Small: return "small";
    case Scale::Medium: return "medium";
    case Scale::Large: return "large";
  }
  return "?";
}

std::optional<Scale> scale_from_name(const std::string& name) {
  if (name == "small") return Scale::Small;
  if (name == "medium") return Scale::Medium;
  if (name == "large") return Scale::Large;
  return std::nullopt;
}

Scale scale_for(int groups, int tracks) {
  const auto bucket = [](int x) { return x <= 10 ? 0 : (x <= 20 ? 1 : 2); };
  static constexpr Scale table[3][3] = {
      {Scale::Small, Scale::Small, Scale::Medium},
      {Scale::Small, Scale::Medium, Scale::Large},
      {Scale::Medium, Scale::Large, Scale::Large},
  };
  return table[bucket(groups)][bucket(tracks)];
}

ScaleSpec ScaleSpec::of(Scale s) {
  switch (s) {
    case Scale::Small: return {4, 10, 2, 4, 2, 20};
    case Scale::Medium: return {10, 40, 5, 7, 2, 40};
    case Scale::Large: return {10, 40, 8, 10, 10, 40};
  }
  throw std::logic_error("unknown scale");
}

YardInstance generate_instance(Scale scale, std::uint64_t seed, std::string name) {
  const ScaleSpec spec = ScaleSpec::of(scale);
  Rng rng(seed);

  const int tracks = rng.range(spec.tracks_lo, spec.tracks_hi);
  const int departure = rng.range(spec.departure_lo, std::min(tracks - 2, spec.departure_cap));
  const int groups = rng.range(spec.groups_lo, spec.groups_hi);
  const int flexible = rng.range(0, std::min(groups - 1, spec.flexible_cap));
  const int fixed = groups - flexible;

  std::vector<Group> pool;
  pool.reserve(static_cast<std::size_t>(groups));
  for (int k = 0; k < fixed; ++k)
    pool.push_back(Group{"g" + std::to_string(k + 1), 1, rng.range(0, departure - 1), 1});
  for (int k = 0; k < flexible; ++k)
    pool.push_back(Group{"x" + std::to_string(k + 1), 1, kFlexible, 1});
  rng.shuffle(pool);

  YardInstance inst;
  inst.sided = Sided::One;
  inst.num_tracks = tracks;
  inst.num_departure = departure;
  inst.cost = CostModel::index_distance();
  inst.initial.tracks.resize(static_cast<std::size_t>(tracks));
  for (Group& g : pool) {
    const int t = departure + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(tracks - departure)));
    inst.initial.tracks[static_cast<std::size_t>(t)].push_back(std::move(g));
  }

  inst.initial = normalize_groups(inst.initial);
  for (auto& track : inst.initial.tracks)
    for (auto& g : track) g.units = 1;

  inst.meta.name = name.empty() ? std::string(scale_name(scale)) + "_" + std::to_string(seed)
                                : std::move(name);
  inst.meta.scale = scale_name(scale_for(groups, tracks));
  inst.meta.seed = seed;
  return inst;
}

std::vector<YardInstance> generate_set(Scale scale, int count, std::uint64_t base_seed) {
  std::vector<YardInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = mix_seed(base_seed, static_cast<std::uint64_t>(k));
    std::string name = std::string(scale_name(scale)) + "_" + std::to_string(base_seed) + "_" +
                       std::to_string(k);
    out.push_back(generate_instance(scale, seed, std::move(name)));
  }
  return out;
}

YardInstance to_two_sided(const YardInstance& instance) {
  if (instance.sided == Sided::Two)
    throw std::invalid_argument("instance is already two-sided");
  YardInstance out = instance;
  out.sided = Sided::Two;
  if (out.cost.mode == CostModel::Mode::Matrix && out.cost.b.empty()) out.cost.b = out.cost.a;
  if (!out.meta.name.empty()) out.meta.name += "_ts";
  return out;
}

}  // namespace shuntyard
