#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace wtraj {

struct DbscanParams {
    double eps = 0.04;
    /// Neighbourhood size needed for a core point, counting the point itself.
    std::size_t min_pts = 10;

    /// Throws std::invalid_argument unless eps > 0 and min_pts >= 1.
    void validate() const;
};

struct DbscanOptions {
    /// Precompute the upper-triangular distance matrix when it fits in this
    /// many bytes. Zero disables the cache.
    std::size_t cache_budget_bytes = 0;
};

enum class PointRole { Core, Border, Noise };

std::string_view to_string(PointRole role);

inline constexpr int kNoise = -1;

struct ClusterAssignment {
    std::vector<int> cluster_ids;  ///< kNoise or 0..cluster_count-1
    std::vector<PointRole> roles;
    int cluster_count = 0;

    std::size_t noise_count() const;
};

/// Symmetric, non-negative distance between items i and j.
using DistanceFunction = std::function<double(std::size_t, std::size_t)>;

/// Density-based clustering over items 0..n-1 with a caller-supplied metric.
///
/// The eps-neighbourhood is the closed ball and includes the query item. Items
/// are scanned in ascending index; each unvisited core item seeds a new
/// cluster that is grown breadth-first. A border item belongs to the first
/// cluster that reaches it.
ClusterAssignment dbscan(std::size_t n, const DistanceFunction& distance, const DbscanParams& params,
                         const DbscanOptions& options = {});

/// Bytes needed by the distance cache for n items.
std::size_t distance_cache_bytes(std::size_t n);

}  // namespace wtraj
