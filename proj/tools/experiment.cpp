#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "mwk/engine.hpp"
#include "mwk/error.hpp"
#include "mwk/parallel.hpp"
#include "output.hpp"

namespace mwk::cli {

void ExperimentSpec::validate() const {
  if (p_values.empty()) throw Error(Errc::InvalidConfig, "at least one p value is required");
  for (double p : p_values) {
    if (!(std::isfinite(p) && p > kMinExponent)) {
      throw Error(Errc::InvalidConfig, "every p value must satisfy p > 1");
    }
  }
  if (n_datasets < 1) throw Error(Errc::InvalidConfig, "n_datasets must be >= 1");
  if (restarts_per_dataset < 1) throw Error(Errc::InvalidConfig, "restarts must be >= 1");
  dataset_spec.validate();
}

std::vector<double> cluster_averaged_sorted(const Matrix& weights) {
  std::vector<double> avg(weights.cols(), 0.0);
  for (std::size_t l = 0; l < weights.rows(); ++l) {
    for (std::size_t v = 0; v < weights.cols(); ++v) avg[v] += weights(l, v);
  }
  for (double& w : avg) w /= static_cast<double>(weights.rows());
  std::sort(avg.begin(), avg.end(), std::greater<>());
  return avg;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads,
                                const ExperimentProgress& progress) {
  spec.validate();
  const std::size_t n_p = spec.p_values.size();
  const std::size_t restarts = spec.restarts_per_dataset;

  std::vector<Dataset> datasets;
  datasets.reserve(spec.n_datasets);
  for (std::size_t d = 0; d < spec.n_datasets; ++d) {
    data::SyntheticSpec ds = spec.dataset_spec;
    ds.seed = spec.dataset_spec.seed + d;
    datasets.push_back(data::range_normalise(data::generate(ds).dataset).dataset);
  }

  ExperimentResult result;
  result.feature_names = datasets.front().feature_names;
  result.n_informative = spec.dataset_spec.n_informative;
  result.runs.resize(spec.n_datasets * n_p * restarts);

  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(result.runs.size(), threads, [&](std::size_t job) {
    const std::size_t d = job / (n_p * restarts);
    const std::size_t pi = (job / restarts) % n_p;
    const std::size_t r = job % restarts;

    MwkConfig config;
    config.k = spec.clusters();
    config.p = spec.p_values[pi];
    config.tol_objective = spec.tol_objective;
    config.max_iter = spec.max_iter;
    config.center_tol = spec.center_tol;
    config.restarts = 1;
    config.seed = spec.run_seed + d * restarts + r;

    RunReport report;
    try {
      report = run(datasets[d], config);
    } catch (const Error& e) {
      std::ostringstream where;
      where << "dataset " << d << ", p = " << config.p << ", restart " << r << ": " << e.what();
      throw Error(e.code(), where.str());
    }

    RunRecord& rec = result.runs[job];
    rec.dataset = d;
    rec.p_index = pi;
    rec.p = config.p;
    rec.restart = r;
    rec.seed = config.seed;
    rec.objective = report.final_state.objective;
    rec.lower = report.bounds.value().lower;
    rec.upper = report.bounds.value().upper;
    rec.normalised = report.normalised_objective.value();
    rec.iterations = report.iterations;
    rec.repairs = report.total_repairs;
    rec.converged = report.converged;
    rec.weights = std::move(report.final_state.weights);

    const std::size_t finished = ++done;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(finished, result.runs.size());
    }
  });

  result.best_run.resize(spec.n_datasets * n_p);
  for (std::size_t d = 0; d < spec.n_datasets; ++d) {
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      const std::size_t first = (d * n_p + pi) * restarts;
      std::size_t best = first;
      for (std::size_t j = first + 1; j < first + restarts; ++j) {
        if (result.runs[j].objective < result.runs[best].objective) best = j;
      }
      result.best_run[d * n_p + pi] = best;
    }
  }

  const std::size_t m = datasets.front().m();
  const std::size_t n_inf = result.n_informative;
  result.summaries.resize(n_p);
  for (std::size_t pi = 0; pi < n_p; ++pi) {
    ExponentSummary& s = result.summaries[pi];
    s.p = spec.p_values[pi];
    s.min_normalised = 1.0;
    s.max_normalised = 0.0;
    double inf_sum = 0.0, noise_sum = 0.0;
    std::size_t inf_count = 0, noise_count = 0;
    for (const RunRecord& rec : result.runs) {
      if (rec.p_index != pi) continue;
      ++s.runs;
      s.mean_normalised += rec.normalised;
      s.min_normalised = std::min(s.min_normalised, rec.normalised);
      s.max_normalised = std::max(s.max_normalised, rec.normalised);
      for (std::size_t l = 0; l < rec.weights.rows(); ++l) {
        for (std::size_t v = 0; v < m; ++v) {
          if (v < n_inf) {
            inf_sum += rec.weights(l, v);
            ++inf_count;
          } else {
            noise_sum += rec.weights(l, v);
            ++noise_count;
          }
        }
      }
    }
    s.mean_normalised /= static_cast<double>(s.runs);
    s.mean_informative_weight = inf_count ? inf_sum / static_cast<double>(inf_count) : 0.0;
    s.mean_noise_weight = noise_count ? noise_sum / static_cast<double>(noise_count) : 0.0;

    s.mean_sorted_weights.assign(m, 0.0);
    for (std::size_t d = 0; d < spec.n_datasets; ++d) {
      const auto sorted = cluster_averaged_sorted(result.best(d, pi).weights);
      for (std::size_t rank = 0; rank < m; ++rank) s.mean_sorted_weights[rank] += sorted[rank];
    }
    for (double& w : s.mean_sorted_weights) w /= static_cast<double>(spec.n_datasets);
  }
  return result;
}

void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec) {
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec) {
    throw Error(Errc::IoError,
                "cannot create '" + spec.output_dir.string() + "': " + ec.message());
  }
  const std::size_t n_p = result.summaries.size();

  std::string fig1 = "dataset,p,cluster,rank,feature,weight\n";
  std::string fig1_agg = "dataset,p,rank,weight\n";
  for (std::size_t d = 0; d < spec.n_datasets; ++d) {
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      const RunRecord& best = result.best(d, pi);
      const std::string prefix = std::to_string(d) + "," + format_number(best.p) + ",";
      for (std::size_t l = 0; l < best.weights.rows(); ++l) {
        std::vector<std::size_t> order(best.weights.cols());
        for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return best.weights(l, a) > best.weights(l, b);
        });
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
          fig1 += prefix + std::to_string(l) + "," + std::to_string(rank) + "," +
                  result.feature_names[order[rank]] + "," +
                  format_number(best.weights(l, order[rank])) + "\n";
        }
      }
      const auto sorted = cluster_averaged_sorted(best.weights);
      for (std::size_t rank = 0; rank < sorted.size(); ++rank) {
        fig1_agg += prefix + std::to_string(rank) + "," + format_number(sorted[rank]) + "\n";
      }
    }
  }

  std::string fig2 = "dataset,p,run,value\n";
  std::string runs =
      "dataset,p,run,seed,objective,lower,upper,normalised_objective,iterations,converged,repairs\n";
  for (const RunRecord& rec : result.runs) {
    const std::string key =
        std::to_string(rec.dataset) + "," + format_number(rec.p) + "," + std::to_string(rec.restart);
    fig2 += key + "," + format_number(rec.normalised) + "\n";
    runs += key + "," + std::to_string(rec.seed) + "," + format_number(rec.objective) + "," +
            format_number(rec.lower) + "," + format_number(rec.upper) + "," +
            format_number(rec.normalised) + "," + std::to_string(rec.iterations) + "," +
            (rec.converged ? "1" : "0") + "," + std::to_string(rec.repairs) + "\n";
  }

  nlohmann::json summary;
  summary["n_datasets"] = spec.n_datasets;
  summary["restarts_per_dataset"] = spec.restarts_per_dataset;
  summary["n_runs"] = result.runs.size();
  summary["k"] = spec.clusters();
  summary["run_seed"] = spec.run_seed;
  summary["feature_names"] = result.feature_names;
  summary["n_informative"] = result.n_informative;
  summary["dataset_spec"] = {
      {"n_points", spec.dataset_spec.n_points},
      {"n_informative", spec.dataset_spec.n_informative},
      {"n_noise", spec.dataset_spec.n_noise},
      {"k_true", spec.dataset_spec.k_true},
      {"seed", spec.dataset_spec.seed},
      {"cluster_std", spec.dataset_spec.cluster_std},
      {"center_min", spec.dataset_spec.center_min},
      {"center_max", spec.dataset_spec.center_max},
  };
  nlohmann::json per_p = nlohmann::json::array();
  for (const ExponentSummary& s : result.summaries) {
    per_p.push_back({
        {"p", s.p},
        {"runs", s.runs},
        {"mean_normalised_objective", s.mean_normalised},
        {"min_normalised_objective", s.min_normalised},
        {"max_normalised_objective", s.max_normalised},
        {"mean_informative_weight", s.mean_informative_weight},
        {"mean_noise_weight", s.mean_noise_weight},
        {"mean_sorted_weights", s.mean_sorted_weights},
    });
  }
  summary["per_p"] = std::move(per_p);

  write_text_file(spec.output_dir / "fig1_weights.csv", fig1);
  write_text_file(spec.output_dir / "fig1_weights_aggregated.csv", fig1_agg);
  write_text_file(spec.output_dir / "fig2_normalised_objective.csv", fig2);
  write_text_file(spec.output_dir / "runs.csv", runs);
  write_text_file(spec.output_dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace mwk::cli
