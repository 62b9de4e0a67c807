#include "compact.hpp"

#include <charconv>
#include <stdexcept>

namespace shuntyard::detail {

CompactState compact_from(const YardState& state) {
  CompactState out;
  out.tracks.resize(state.tracks.size());
  for (std::size_t t = 0; t < state.tracks.size(); ++t) {
    auto& dst = out.tracks[t];
    dst.reserve(state.tracks[t].size());
    for (const Group& g : state.tracks[t]) dst.push_back(static_cast<DestCode>(g.destination));
  }
  return out;
}

void compact_key_into(const CompactState& state, std::string& out) {
  out.clear();
  char buf[8];
  for (std::size_t t = 0; t < state.tracks.size(); ++t) {
    if (t > 0) out.push_back('|');
    const auto& track = state.tracks[t];
    for (std::size_t p = 0; p < track.size(); ++p) {
      if (p > 0) out.push_back(',');
      if (track[p] == kFlexible) {
        out.push_back('*');
      } else {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, track[p]);
        (void)ec;
        out.append(buf, end);
      }
    }
  }
}

std::string compact_key(const CompactState& state) {
  std::string out;
  out.reserve(state.tracks.size() * 4);
  compact_key_into(state, out);
  return out;
}

CompactState compact_parse(const std::string& key) {
  CompactState out;
  out.tracks.emplace_back();
  const char* p = key.data();
  const char* end = p + key.size();
  bool pending = false;  // a group token is expected before the next separator
  while (p < end) {
    if (*p == '|') {
      out.tracks.emplace_back();
      pending = false;
      ++p;
    } else if (*p == ',') {
      pending = true;
      ++p;
    } else if (*p == '*') {
      out.tracks.back().push_back(kFlexible);
      pending = false;
      ++p;
    } else {
      int value = 0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc() || next == p)
        throw std::runtime_error("malformed state key: " + key);
      out.tracks.back().push_back(static_cast<DestCode>(value));
      pending = false;
      p = next;
    }
  }
  if (pending) throw std::runtime_error("malformed state key: " + key);
  return out;
}

bool compact_terminal(const CompactState& state, int num_departure) {
  for (std::size_t t = 0; t < state.tracks.size(); ++t) {
    const int track = static_cast<int>(t);
    for (DestCode d : state.tracks[t]) {
      if (d == kFlexible) {
        if (track < num_departure) return false;
      } else if (d != track) {
        return false;
      }
    }
  }
  return true;
}

int compact_group_count(const CompactState& state) {
  std::size_t n = 0;
  for (const auto& track : state.tracks) n += track.size();
  return static_cast<int>(n);
}

std::size_t compact_action_count(const CompactState& state, const std::vector<int>& tracks_in_play) {
  if (tracks_in_play.size() < 2) return 0;
  std::size_t total = 0;
  for (int t : tracks_in_play) total += state.tracks[static_cast<std::size_t>(t)].size();
  return total * (tracks_in_play.size() - 1);
}

Move compact_action_at(const CompactState& state, const std::vector<int>& tracks_in_play,
                       End end, const CostModel& cost, std::size_t index) {
  const std::size_t others = tracks_in_play.size() - 1;
  for (int src : tracks_in_play) {
    const std::size_t h = state.tracks[static_cast<std::size_t>(src)].size();
    const std::size_t span = h * others;  // all (m, dest) choices for this source
    if (index >= span) {
      index -= span;
      continue;
    }
    const int m = static_cast<int>(index / others) + 1;
    std::size_t k = index % others;
    for (int dst : tracks_in_play) {
      if (dst == src) continue;
      if (k == 0) return Move{src, m, dst, end, cost.cost(src, dst, end)};
      --k;
    }
  }
  throw std::out_of_range("action index out of range");
}

void compact_apply(CompactState& state, const Move& move) {
  auto& src = state.tracks[static_cast<std::size_t>(move.from)];
  auto& dst = state.tracks[static_cast<std::size_t>(move.to)];
  const std::size_t m = static_cast<std::size_t>(move.count);
  if (move.end == End::A) {
    dst.insert(dst.begin(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(m));
    src.erase(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    dst.insert(dst.end(), src.end() - static_cast<std::ptrdiff_t>(m), src.end());
    src.erase(src.end() - static_cast<std::ptrdiff_t>(m), src.end());
  }
}

}  // namespace shuntyard::detail
