#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "coordsynth/generator.hpp"

namespace coordsynth::detail {

std::vector<bool> reachable(const Generator& g);
std::vector<bool> coreachable(const Generator& g);

/// Keeps only states with keep[q]; initial must be kept.
Generator restrict_states(const Generator& g, const std::vector<bool>& keep);

/// Parent links of a breadth-first search, for witness reconstruction.
struct BfsTree {
  static constexpr std::uint32_t kRoot = 0xffffffffu;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via_event;

  std::uint32_t add(std::uint32_t from, std::uint32_t event) {
    parent.push_back(from);
    via_event.push_back(event);
    return static_cast<std::uint32_t>(parent.size() - 1);
  }

  /// Event indices on the path from the root to `node`.
  std::vector<std::uint32_t> path(std::uint32_t node) const {
    std::vector<std::uint32_t> out;
    while (parent[node] != kRoot) {
      out.push_back(via_event[node]);
      node = parent[node];
    }
    return {out.rbegin(), out.rend()};
  }
};

Word to_word(const Alphabet& alphabet, const std::vector<std::uint32_t>& events);

}  // namespace coordsynth::detail
