#pragma once

#include <span>
#include <utility>
#include <vector>

#include "catena/vec2.hpp"

namespace catena {

/// Neighbour list over a uniform spatial grid: all point pairs within
/// cutoff + skin at build time, kept valid while no point has moved more
/// than skin/2 since then. Pair order is deterministic (sorted, i < j).
class PairList {
  public:
    void rebuild(std::span<const Vec2> points, double cutoff, double skin);
    bool valid_for(std::span<const Vec2> points) const;
    std::span<const std::pair<int, int>> pairs() const { return pairs_; }

  private:
    std::vector<std::pair<int, int>> pairs_;
    std::vector<Vec2> reference_;
    double skin_ = 0.0;
    // scratch buffers reused across rebuilds
    std::vector<int> cell_of_;
    std::vector<int> cell_start_;
    std::vector<int> cell_items_;
};

/// One-shot convenience: all pairs within cutoff, sorted.
std::vector<std::pair<int, int>> pairs_within(std::span<const Vec2> points, double cutoff);

}  // namespace catena
