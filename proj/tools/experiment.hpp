#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mwk/data.hpp"
#include "mwk/matrix.hpp"

namespace mwk::cli {

/// Grid of synthetic datasets x exponents x restarts.
///
/// Dataset d is generated with seed `dataset_spec.seed + d` and range
/// normalised. Restart r on dataset d is seeded `run_seed + d * restarts + r`
/// for every exponent, so all p values share initial centroids.
struct ExperimentSpec {
  std::vector<double> p_values{1.1, 1.5, 2.0, 5.0};
  std::size_t n_datasets = 10;
  std::size_t restarts_per_dataset = 20;
  data::SyntheticSpec dataset_spec;
  std::filesystem::path output_dir;
  std::size_t k = 0;  // 0 selects dataset_spec.k_true
  std::uint64_t run_seed = 1000;
  double tol_objective = 1e-6;
  std::size_t max_iter = 100;
  double center_tol = 1e-10;

  std::size_t clusters() const { return k == 0 ? dataset_spec.k_true : k; }
  void validate() const;
};

struct RunRecord {
  std::size_t dataset = 0;
  std::size_t p_index = 0;
  double p = 0.0;
  std::size_t restart = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double normalised = 0.0;
  std::size_t iterations = 0;
  std::size_t repairs = 0;
  bool converged = false;
  Matrix weights;  // k x m
};

struct ExponentSummary {
  double p = 0.0;
  std::size_t runs = 0;
  double mean_normalised = 0.0;
  double min_normalised = 0.0;
  double max_normalised = 0.0;
  double mean_informative_weight = 0.0;
  double mean_noise_weight = 0.0;
  // Per rank, mean over datasets of the best run's cluster-averaged weights
  // sorted in descending order.
  std::vector<double> mean_sorted_weights;
};

struct ExperimentResult {
  std::vector<std::string> feature_names;
  std::size_t n_informative = 0;
  // Ordered by (dataset, p_index, restart).
  std::vector<RunRecord> runs;
  // best_run[dataset * n_p + p_index] indexes into runs.
  std::vector<std::size_t> best_run;
  std::vector<ExponentSummary> summaries;

  const RunRecord& best(std::size_t dataset, std::size_t p_index) const {
    return runs[best_run[dataset * summaries.size() + p_index]];
  }
};

using ExperimentProgress = std::function<void(std::size_t done, std::size_t total)>;

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = 0,
                                const ExperimentProgress& progress = {});

/// Weights of one cluster-averaged row, sorted in descending order.
std::vector<double> cluster_averaged_sorted(const Matrix& weights);

/// Writes into spec.output_dir:
///   fig1_weights.csv             dataset,p,cluster,rank,feature,weight
///   fig1_weights_aggregated.csv  dataset,p,rank,weight
///   fig2_normalised_objective.csv dataset,p,run,value
///   runs.csv                     one row per run with bounds and diagnostics
///   summary.json                 per-p aggregates
void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec);

}  // namespace mwk::cli
