#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mwk/types.hpp"

namespace mwk {

using EngineObserver = std::function<void(const EngineEvent&)>;

/// Nearest centroid under the weighted Minkowski distance of each cluster.
/// Exact ties go to the lowest cluster index.
std::vector<std::size_t> assign_points(const Dataset& data, const Matrix& centroids,
                                       const Matrix& weights, double p);

/// Per-feature Minkowski centres of each cluster.
/// Throws Error(EmptyCluster) with the cluster index if any cluster is empty.
Matrix update_centroids(const Dataset& data, std::span<const std::size_t> assignments,
                        std::size_t k, double p, double center_tol);

/// Direct evaluation of sum_i sum_v w_{a_i v}^p |x_iv - z_{a_i v}|^p.
double evaluate_objective(const Dataset& data, std::span<const std::size_t> assignments,
                          const Matrix& centroids, const Matrix& weights, double p);

/// One mwk-means run: uniform weights, k distinct random data points as
/// centroids, then assign -> centroids -> weights until the relative
/// objective change is at most tol_objective, no point changes cluster,
/// or max_iter iterations have run.
RunReport run(const Dataset& data, const MwkConfig& config, const EngineObserver& observer = {});

struct RestartResult {
  RunReport best;
  std::vector<RunReport> all;
  std::size_t best_index = 0;
};

/// `config.restarts` independent runs seeded seed, seed+1, ...; best is the
/// lowest final objective (earliest restart on ties). Runs are spread over
/// `threads` workers (0 = hardware concurrency); results do not depend on it.
RestartResult run_restarts(const Dataset& data, const MwkConfig& config, unsigned threads = 1);

/// Lloyd's algorithm with squared Euclidean distance and mean centroids.
/// Uses the same seeding, repair and stopping rules as run(); weights in the
/// report are the fixed uniform 1/m and the objective is the plain SSE.
RunReport run_classic_kmeans(const Dataset& data, std::size_t k, std::uint64_t seed,
                             double tol = 1e-6, std::size_t max_iter = 100);

}  // namespace mwk
