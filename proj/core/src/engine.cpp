#include "mwk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mwk/error.hpp"
#include "mwk/geometry.hpp"
#include "mwk/parallel.hpp"
#include "mwk/rng.hpp"
#include "mwk/theory.hpp"
#include "mwk/weighting.hpp"
#include "numeric.hpp"

namespace mwk {

namespace {

enum class Mode { Weighted, Classic };

// w_lv^p, computed once per assignment pass.
Matrix powered_weights(const Matrix& weights, double p) {
  Matrix out(weights.rows(), weights.cols());
  for (std::size_t l = 0; l < weights.rows(); ++l) {
    for (std::size_t v = 0; v < weights.cols(); ++v) {
      const double w = weights(l, v);
      out(l, v) = w == 0.0 ? 0.0 : detail::abs_pow(w, p);
    }
  }
  return out;
}

double powered_distance(std::span<const double> x, std::span<const double> z,
                        std::span<const double> wp, double p) {
  double total = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (wp[v] == 0.0) continue;
    total += wp[v] * detail::abs_pow(x[v] - z[v], p);
  }
  return total;
}

void check_shapes(const Dataset& data, const Matrix& centroids, const Matrix& weights) {
  if (centroids.rows() == 0 || centroids.cols() != data.m() || weights.rows() != centroids.rows() ||
      weights.cols() != data.m()) {
    throw Error(Errc::DimensionMismatch, "centroid/weight shapes do not match the dataset");
  }
}

std::vector<std::size_t> assign_powered(const Dataset& data, const Matrix& centroids,
                                        const Matrix& wp, double p) {
  const std::size_t k = centroids.rows();
  std::vector<std::size_t> out(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto x = data.values.row(i);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < k; ++l) {
      const double d = powered_distance(x, centroids.row(l), wp.row(l), p);
      if (d < best_d) {
        best_d = d;
        best = l;
      }
    }
    out[i] = best;
  }
  return out;
}

// Moves the point farthest from its own centroid into each empty cluster.
// Donor clusters must keep at least one point. Returns the number of repairs.
std::size_t repair_empty_clusters(const Dataset& data, std::vector<std::size_t>& assignments,
                                  const Matrix& centroids, const Matrix& wp, double p) {
  const std::size_t k = centroids.rows();
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t a : assignments) ++counts[a];

  std::size_t repairs = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (counts[l] != 0) continue;
    std::size_t pick = data.n();
    double pick_d = -1.0;
    for (std::size_t i = 0; i < data.n(); ++i) {
      const std::size_t own = assignments[i];
      if (counts[own] < 2) continue;
      const double d = powered_distance(data.values.row(i), centroids.row(own), wp.row(own), p);
      if (d > pick_d) {
        pick_d = d;
        pick = i;
      }
    }
    // k <= n guarantees a donor exists while any cluster is empty.
    --counts[assignments[pick]];
    assignments[pick] = l;
    ++counts[l];
    ++repairs;
  }
  return repairs;
}

Matrix initial_centroids(const Dataset& data, std::size_t k, Rng& rng) {
  // Partial Fisher-Yates: k distinct indices, uniformly without replacement.
  std::vector<std::size_t> order(data.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Matrix centroids(k, data.m());
  for (std::size_t l = 0; l < k; ++l) {
    const std::size_t j = l + rng.below(data.n() - l);
    std::swap(order[l], order[j]);
    const auto src = data.values.row(order[l]);
    std::copy(src.begin(), src.end(), centroids.row(l).begin());
  }
  return centroids;
}

bool objective_settled(double previous, double current, double tol) {
  if (!std::isfinite(previous)) return false;
  if (previous == current) return true;
  const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
  return std::abs(previous - current) / scale <= tol;
}

RunReport lloyd(const Dataset& data, const MwkConfig& config, Mode mode,
                const EngineObserver& observer) {
  config.validate(data.n());
  const std::size_t n = data.n();
  const std::size_t m = data.m();
  const std::size_t k = config.k;
  const double p = mode == Mode::Classic ? 2.0 : config.p;

  Rng rng(config.seed);
  RunReport report;
  report.seed = config.seed;

  ClusteringState& state = report.final_state;
  state.weights = Matrix(k, m, 1.0 / static_cast<double>(m));
  state.centroids = initial_centroids(data, k, rng);
  state.assignments.assign(n, k);  // sentinel: nothing assigned yet

  // Classic k-means measures plain squared Euclidean distance.
  const Matrix unit(k, m, 1.0);
  double previous = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    const Matrix wp = mode == Mode::Classic ? unit : powered_weights(state.weights, p);
    auto assignments = assign_powered(data, state.centroids, wp, p);
    const std::size_t repairs = repair_empty_clusters(data, assignments, state.centroids, wp, p);

    std::size_t reassigned = 0;
    for (std::size_t i = 0; i < n; ++i) reassigned += assignments[i] != state.assignments[i];
    state.assignments = std::move(assignments);

    state.centroids = update_centroids(data, state.assignments, k, p, config.center_tol);
    report.dispersions = compute_dispersions(data, state.assignments, state.centroids, p);

    if (mode == Mode::Weighted) {
      state.weights = update_weights(report.dispersions, p);
      state.objective = theory::objective_with_weights(report.dispersions, state.weights, p);
    } else {
      const auto flat = report.dispersions.d.flat();
      state.objective = std::accumulate(flat.begin(), flat.end(), 0.0);
    }

    EngineEvent event{iter, state.objective, reassigned, repairs};
    report.objective_trace.push_back(state.objective);
    report.events.push_back(event);
    report.total_repairs += repairs;
    report.iterations = iter;
    if (observer) observer(event);

    if ((iter > 1 && reassigned == 0) ||
        objective_settled(previous, state.objective, config.tol_objective)) {
      report.converged = true;
      break;
    }
    previous = state.objective;
  }

  if (mode == Mode::Weighted) {
    report.bounds = theory::objective_bounds(report.dispersions, p);
    report.normalised_objective = theory::normalised_objective(state.objective, *report.bounds);
  }
  return report;
}

}  // namespace

std::vector<std::size_t> assign_points(const Dataset& data, const Matrix& centroids,
                                       const Matrix& weights, double p) {
  check_shapes(data, centroids, weights);
  return assign_powered(data, centroids, powered_weights(weights, p), p);
}

Matrix update_centroids(const Dataset& data, std::span<const std::size_t> assignments,
                        std::size_t k, double p, double center_tol) {
  if (assignments.size() != data.n()) {
    throw Error(Errc::DimensionMismatch, "one assignment per point is required");
  }
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] >= k) {
      throw Error::at_index(Errc::DimensionMismatch, i, "assignment outside [0, k)");
    }
    members[assignments[i]].push_back(i);
  }

  Matrix centroids(k, data.m());
  std::vector<double> samples;
  for (std::size_t l = 0; l < k; ++l) {
    if (members[l].empty()) throw Error::at_index(Errc::EmptyCluster, l, "cluster has no points");
    samples.resize(members[l].size());
    for (std::size_t v = 0; v < data.m(); ++v) {
      for (std::size_t j = 0; j < members[l].size(); ++j) samples[j] = data.values(members[l][j], v);
      centroids(l, v) = minkowski_center(samples, p, center_tol).z;
    }
  }
  return centroids;
}

double evaluate_objective(const Dataset& data, std::span<const std::size_t> assignments,
                          const Matrix& centroids, const Matrix& weights, double p) {
  check_shapes(data, centroids, weights);
  if (assignments.size() != data.n()) {
    throw Error(Errc::DimensionMismatch, "one assignment per point is required");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const std::size_t l = assignments[i];
    total += weighted_minkowski_distance(data.values.row(i), centroids.row(l), weights.row(l), p);
  }
  return total;
}

RunReport run(const Dataset& data, const MwkConfig& config, const EngineObserver& observer) {
  return lloyd(data, config, Mode::Weighted, observer);
}

RestartResult run_restarts(const Dataset& data, const MwkConfig& config, unsigned threads) {
  config.validate(data.n());
  RestartResult result;
  result.all.resize(config.restarts);
  parallel_for(config.restarts, threads, [&](std::size_t r) {
    MwkConfig local = config;
    local.seed = config.seed + r;
    result.all[r] = run(data, local);
  });
  for (std::size_t r = 1; r < result.all.size(); ++r) {
    if (result.all[r].final_state.objective < result.all[result.best_index].final_state.objective) {
      result.best_index = r;
    }
  }
  result.best = result.all[result.best_index];
  return result;
}

RunReport run_classic_kmeans(const Dataset& data, std::size_t k, std::uint64_t seed, double tol,
                             std::size_t max_iter) {
  MwkConfig config;
  config.k = k;
  config.p = 2.0;
  config.seed = seed;
  config.tol_objective = tol;
  config.max_iter = max_iter;
  config.restarts = 1;
  return lloyd(data, config, Mode::Classic, {});
}

}  // namespace mwk
