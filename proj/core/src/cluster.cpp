#include "wtraj/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>

namespace wtraj {

void DbscanParams::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("Eps must be positive and finite");
    if (min_pts < 1) throw std::invalid_argument("MinPts must be at least 1");
}

std::string_view to_string(PointRole role) {
    switch (role) {
    case PointRole::Core: return "core";
    case PointRole::Border: return "border";
    case PointRole::Noise: return "noise";
    }
    return "noise";
}

std::size_t ClusterAssignment::noise_count() const {
    return static_cast<std::size_t>(std::count(cluster_ids.begin(), cluster_ids.end(), kNoise));
}

std::size_t distance_cache_bytes(std::size_t n) {
    return n < 2 ? 0 : n * (n - 1) / 2 * sizeof(double);
}

namespace {

class TriangleCache {
public:
    TriangleCache(std::size_t n, const DistanceFunction& d) : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) values_[k++] = d(i, j);
        }
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (i > j) std::swap(i, j);
        // Row i starts after rows 0..i-1, which hold (n-1) + ... + (n-i) entries.
        const std::size_t row_start = i * (2 * n_ - i - 1) / 2;
        return values_[row_start + (j - i - 1)];
    }

private:
    std::size_t n_;
    std::vector<double> values_;
};

constexpr int kUnvisited = -2;

}  // namespace

ClusterAssignment dbscan(std::size_t n, const DistanceFunction& distance, const DbscanParams& params,
                         const DbscanOptions& options) {
    params.validate();

    DistanceFunction d = distance;
    if (options.cache_budget_bytes > 0 && n >= 2 && distance_cache_bytes(n) <= options.cache_budget_bytes) {
        auto cache = std::make_shared<TriangleCache>(n, distance);
        d = [cache](std::size_t i, std::size_t j) { return (*cache)(i, j); };
    }

    ClusterAssignment out;
    out.cluster_ids.assign(n, kUnvisited);
    out.roles.assign(n, PointRole::Noise);

    std::vector<std::size_t> neighbours;
    auto region = [&](std::size_t p) {
        neighbours.clear();
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p || d(p, q) <= params.eps) neighbours.push_back(q);
        }
        return neighbours.size();
    };

    std::deque<std::size_t> seeds;
    // Claims unvisited neighbours for the cluster and queues them for a query;
    // noise already known to be sparse becomes border directly.
    auto absorb = [&](int cluster) {
        for (auto r : neighbours) {
            if (out.cluster_ids[r] == kUnvisited) {
                out.cluster_ids[r] = cluster;
                seeds.push_back(r);
            } else if (out.cluster_ids[r] == kNoise) {
                out.cluster_ids[r] = cluster;
                out.roles[r] = PointRole::Border;
            }
        }
    };

    for (std::size_t p = 0; p < n; ++p) {
        if (out.cluster_ids[p] != kUnvisited) continue;
        if (region(p) < params.min_pts) {
            out.cluster_ids[p] = kNoise;
            continue;
        }
        const int cluster = out.cluster_count++;
        out.cluster_ids[p] = cluster;
        out.roles[p] = PointRole::Core;
        absorb(cluster);

        while (!seeds.empty()) {
            const auto q = seeds.front();
            seeds.pop_front();
            if (region(q) >= params.min_pts) {
                out.roles[q] = PointRole::Core;
                absorb(cluster);
            } else {
                out.roles[q] = PointRole::Border;
            }
        }
    }
    return out;
}

}  // namespace wtraj
