#pragma once

// Random instance generation. Sizes are drawn per scale class, destinations
// are uniform over departure tracks, and every group starts on a uniformly
// chosen classification track. One seed, one instance, byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shuntyard/yard.hpp"

namespace shuntyard {

enum class Scale { Small, Medium, Large };

const char* scale_name(Scale s);
std::optional<Scale> scale_from_name(const std::string& name);

// Joint group-count/track-count classification. Buckets are <=10, 11..20 and
// above; the label drives solver routing (direct learning vs preprocessing
// plus batching) and the default terminal bonus.
Scale scale_for(int groups, int tracks);

// Sampling ranges for one scale class. Bounds are inclusive; the departure
// upper bound is additionally capped at tracks - 2 so at least two
// classification tracks always exist.
struct ScaleSpec {
  int tracks_lo, tracks_hi;
  int departure_lo, departure_cap;
  int groups_lo, groups_hi;
  int flexible_cap = 10;

  static ScaleSpec of(Scale s);
};

YardInstance generate_instance(Scale scale, std::uint64_t seed, std::string name = "");

// `count` instances with per-instance seeds derived from `base_seed`; names
// follow <scale>_<base_seed>_<k>.
std::vector<YardInstance> generate_set(Scale scale, int count, std::uint64_t base_seed);

// Copies a one-sided instance into its two-sided twin: same layout, the one
// cost table serving both switch ends, "_ts" appended to the name. Throws if
// the input is already two-sided.
YardInstance to_two_sided(const YardInstance& instance);

}  // namespace shuntyard
