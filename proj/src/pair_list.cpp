#include "catena/pair_list.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catena {

void PairList::rebuild(std::span<const Vec2> points, double cutoff, double skin) {
    if (cutoff <= 0.0 || skin < 0.0) throw std::invalid_argument("bad cutoff/skin");
    const double reach = cutoff + skin;
    const int n = static_cast<int>(points.size());

    pairs_.clear();
    reference_.assign(points.begin(), points.end());
    skin_ = skin;
    if (n < 2) return;

    double xlo = points[0].x, xhi = points[0].x;
    double ylo = points[0].y, yhi = points[0].y;
    for (const Vec2& p : points) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    const int nx = std::max(1, static_cast<int>((xhi - xlo) / reach) + 1);
    const int ny = std::max(1, static_cast<int>((yhi - ylo) / reach) + 1);
    const int ncells = nx * ny;

    cell_of_.resize(n);
    for (int i = 0; i < n; ++i) {
        int cx = static_cast<int>((points[i].x - xlo) / reach);
        int cy = static_cast<int>((points[i].y - ylo) / reach);
        cx = std::clamp(cx, 0, nx - 1);
        cy = std::clamp(cy, 0, ny - 1);
        cell_of_[i] = cy * nx + cx;
    }

    // Counting sort of point indices by cell.
    cell_start_.assign(ncells + 1, 0);
    for (int i = 0; i < n; ++i) ++cell_start_[cell_of_[i] + 1];
    for (int c = 0; c < ncells; ++c) cell_start_[c + 1] += cell_start_[c];
    cell_items_.resize(n);
    {
        std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
        for (int i = 0; i < n; ++i) cell_items_[fill[cell_of_[i]]++] = i;
    }

    const double reach2 = reach * reach;
    for (int i = 0; i < n; ++i) {
        const int cx = cell_of_[i] % nx;
        const int cy = cell_of_[i] / nx;
        for (int dy = -1; dy <= 1; ++dy) {
            const int yy = cy + dy;
            if (yy < 0 || yy >= ny) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                const int xx = cx + dx;
                if (xx < 0 || xx >= nx) continue;
                const int c = yy * nx + xx;
                for (int k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
                    const int j = cell_items_[k];
                    if (j <= i) continue;
                    if ((points[j] - points[i]).norm2() <= reach2) pairs_.push_back({i, j});
                }
            }
        }
    }
    std::sort(pairs_.begin(), pairs_.end());
}

bool PairList::valid_for(std::span<const Vec2> points) const {
    if (points.size() != reference_.size()) return false;
    const double budget2 = 0.25 * skin_ * skin_;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if ((points[i] - reference_[i]).norm2() > budget2) return false;
    }
    return true;
}

std::vector<std::pair<int, int>> pairs_within(std::span<const Vec2> points, double cutoff) {
    PairList list;
    list.rebuild(points, cutoff, 0.0);
    return {list.pairs().begin(), list.pairs().end()};
}

}  // namespace catena
