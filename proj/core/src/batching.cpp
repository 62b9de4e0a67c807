#include "shuntyard/batching.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shuntyard {

std::vector<Batch> make_batches(const YardState& standardized, int num_departure, int f) {
  if (f < 1) throw std::invalid_argument("batch size f must be at least 1");
  const int n = standardized.track_count();
  if (num_departure < 0 || num_departure >= n)
    throw std::invalid_argument("num_departure leaves no classification track");
  const int k0 = num_departure;

  for (int t = 0; t < n; ++t) {
    const auto& track = standardized.tracks[static_cast<std::size_t>(t)];
    if (t != k0 && !track.empty())
      throw std::invalid_argument("state is not standardized: track " + std::to_string(t) +
                                  " is not empty");
    if (t == k0)
      for (const Group& g : track)
        if (g.flexible())
          throw std::invalid_argument(
              "state is not standardized: flexible group on the train");
  }

  const auto& train = standardized.tracks[static_cast<std::size_t>(k0)];
  std::vector<Batch> out;
  for (std::size_t at = 0; at < train.size(); at += static_cast<std::size_t>(f)) {
    Batch batch;
    const auto end = std::min(train.size(), at + static_cast<std::size_t>(f));
    batch.groups.assign(train.begin() + static_cast<std::ptrdiff_t>(at),
                        train.begin() + static_cast<std::ptrdiff_t>(end));
    batch.allowed_tracks.push_back(k0);
    for (const Group& g : batch.groups) batch.allowed_tracks.push_back(g.destination);
    std::sort(batch.allowed_tracks.begin(), batch.allowed_tracks.end());
    batch.allowed_tracks.erase(
        std::unique(batch.allowed_tracks.begin(), batch.allowed_tracks.end()),
        batch.allowed_tracks.end());
    out.push_back(std::move(batch));
  }
  return out;
}

std::vector<Move> batch_action_universe(const Batch& batch, const YardState& state,
                                        const CostModel& cost) {
  return enumerate_actions(state, cost, {End::A}, batch.allowed_tracks);
}

}  // namespace shuntyard
