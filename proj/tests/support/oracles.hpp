#pragma once

// Reference implementations used only by tests. They favour obviousness
// over speed and share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace wtraj::oracle {

/// Quadratic dynamic programme for the longest common contiguous run.
inline std::size_t longest_common_substring(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> cur(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

using Point2 = std::array<double, 2>;

inline double euclidean(const Point2& p, const Point2& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); }

struct DensityPartition {
    std::vector<bool> core;
    std::vector<int> label;  ///< -1 for noise
    int clusters = 0;
};

/// First-principles DBSCAN: Core points are those with at least min_pts
/// points (self included) within eps. Clusters are the connected components
/// of the core graph, numbered by their smallest core index. A non-core point
/// with a core neighbour joins the neighbouring component with the smallest
/// numbering; anything else is noise.
template <class Distance>
DensityPartition classify_density(std::size_t n, Distance distance, double eps, std::size_t min_pts) {
    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (distance(i, j) <= eps) neighbours[i].push_back(j);
        }
    }
    DensityPartition out;
    out.core.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) out.core[i] = neighbours[i].size() >= min_pts;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.core[i]) continue;
        for (auto j : neighbours[i]) {
            if (out.core[j]) parent[find(i)] = find(j);
        }
    }

    std::vector<int> root_label(n, -1);
    out.label.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.core[i]) continue;
        auto& l = root_label[find(i)];
        if (l < 0) l = out.clusters++;
        out.label[i] = l;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.core[i]) continue;
        int best = -1;
        for (auto j : neighbours[i]) {
            if (out.core[j] && (best < 0 || out.label[j] < best)) best = out.label[j];
        }
        out.label[i] = best;
    }
    return out;
}

/// True when the two labelings describe the same partition with -1 fixed.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::pair<int, int>> forward;
    std::vector<std::pair<int, int>> backward;
    auto consistent = [](std::vector<std::pair<int, int>>& map, int from, int to) {
        for (const auto& [f, t] : map) {
            if (f == from) return t == to;
        }
        map.emplace_back(from, to);
        return true;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] < 0) != (b[i] < 0)) return false;
        if (a[i] < 0) continue;
        if (!consistent(forward, a[i], b[i]) || !consistent(backward, b[i], a[i])) return false;
    }
    return true;
}

}  // namespace wtraj::oracle
