#pragma once

// Linkage clustering and K-means. Clusterings are read as instances whose x
// is the cluster id and whose feedback is the data point.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "abduction/del.hpp"

namespace abduction::learners {

using Point = std::vector<double>;

struct ClusterState {
  std::vector<std::size_t> assignment;  // point index -> cluster id
  std::vector<Point> centers;           // means of the assigned points
  std::vector<std::size_t> sizes;       // l_k
};

/// Sizes and means recomputed from the assignment; empty clusters keep a
/// zero-length center.
ClusterState make_state(std::span<const Point> points, std::vector<std::size_t> assignment, std::size_t k);

/// Instances (x = {cluster id}, y = point).
std::vector<del::Instance> clustering_instances(std::span<const Point> points, std::span<const std::size_t> assignment);

// ---------------------------------------------------------------------------
// Linkage clustering

enum class Linkage { single, average, complete };

/// Aggregation of pairwise point distances: minimum, averaging or maximum.
agg::AggregationSpec linkage_aggregation(Linkage linkage);

/// rho(C_i, C_j) as the badness of the hypothesis moving C_j onto id i.
double linkage_distance(std::span<const Point> ci, std::span<const Point> cj, Linkage linkage);

/// Pair (i < j) of clusters with the smallest linkage distance; ties go to
/// the lexicographically smallest pair. Throws with fewer than two clusters.
std::pair<std::size_t, std::size_t> linkage_merge_round(const std::vector<std::vector<Point>>& clusters,
                                                        Linkage linkage);

/// Starts from singletons and merges until k_target clusters remain. A merge
/// of (i, j) folds C_j into C_i; ids are positions in the remaining list.
ClusterState linkage_cluster(std::span<const Point> points, Linkage linkage, std::size_t k_target);

// ---------------------------------------------------------------------------
// K-means

/// W in pairwise form: half squared distances summed over ordered pairs of
/// distinct points sharing a cluster. No such pair gives 0.
double within_cluster_pairwise(std::span<const Point> points, std::span<const std::size_t> assignment);

/// W in centroid form: sum_k l_k sum_{C(i)=k} |x_i - mean_k|^2.
double within_cluster_centroid(std::span<const Point> points, std::span<const std::size_t> assignment, std::size_t k);

/// Cluster id for points[idx] minimizing the pairwise W given the other
/// assignments; ties go to the lowest id.
std::size_t kmeans_assign_point(const ClusterState& state, std::span<const Point> points, std::size_t idx);

struct KMeansResult {
  ClusterState state;
  /// W after initialization and after every accepted change or repair.
  std::vector<double> objective;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Seeded distinct initial centers, nearest-center start, then rounds of
/// kmeans_assign_point over all points, accepting strict improvements only.
/// An empty cluster receives the point farthest from its own center.
KMeansResult kmeans_run(std::span<const Point> points, std::size_t k, std::uint64_t seed, std::size_t max_rounds);

}  // namespace abduction::learners
