#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwk/matrix.hpp"

namespace mwk {

using Label = std::int64_t;

/// n x m table of finite feature values. Labels, when present, are ground
/// truth for evaluation only; the clustering code never reads them.
struct Dataset {
  Matrix values;
  std::vector<std::string> feature_names;
  std::optional<std::vector<Label>> labels;

  std::size_t n() const noexcept { return values.rows(); }
  std::size_t m() const noexcept { return values.cols(); }
};

/// Checks shape and finiteness. Throws Error with EmptyMatrix, RaggedRows
/// or NonFinite(row, col) for the first offending cell in row-major order.
Dataset validate_dataset(const std::vector<std::vector<double>>& raw,
                         std::vector<std::string> feature_names = {},
                         std::optional<std::vector<Label>> labels = std::nullopt);
Dataset validate_dataset(Matrix values, std::vector<std::string> feature_names = {},
                         std::optional<std::vector<Label>> labels = std::nullopt);

/// Smallest admissible Minkowski exponent is strictly above this value.
inline constexpr double kMinExponent = 1.0 + 1e-9;

struct MwkConfig {
  std::size_t k = 2;
  double p = 2.0;
  double tol_objective = 1e-6;
  std::size_t max_iter = 100;
  double center_tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;

  /// Throws Error(InvalidConfig) naming the violated requirement.
  void validate(std::size_t n_points) const;
};

struct ClusteringState {
  std::vector<std::size_t> assignments;
  Matrix centroids;
  Matrix weights;
  double objective = 0.0;
};

/// d(l, v) = sum over points of cluster l of |x_iv - z_lv|^p.
struct DispersionMatrix {
  Matrix d;

  std::size_t k() const noexcept { return d.rows(); }
  std::size_t m() const noexcept { return d.cols(); }
};

DispersionMatrix compute_dispersions(const Dataset& data, std::span<const std::size_t> assignments,
                                     const Matrix& centroids, double p);

struct BoundsResult {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> per_cluster_min;
  std::vector<double> per_cluster_geomean;
  double prefactor = 1.0;  // 1 / m^(p-1)
};

struct EngineEvent {
  std::size_t iteration = 0;
  double objective = 0.0;
  std::size_t n_reassigned = 0;
  std::size_t n_empty_repaired = 0;
};

struct RunReport {
  std::vector<double> objective_trace;
  std::vector<EngineEvent> events;
  ClusteringState final_state;
  DispersionMatrix dispersions;
  // Absent for the classical k-means baseline, whose objective is not W_p.
  std::optional<BoundsResult> bounds;
  std::optional<double> normalised_objective;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t total_repairs = 0;
  std::uint64_t seed = 0;
};

}  // namespace mwk
