#include "report_json.hpp"

namespace mwk::cli {

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json out;
  out["seed"] = report.seed;
  out["objective"] = report.final_state.objective;
  out["iterations"] = report.iterations;
  out["converged"] = report.converged;
  out["total_repairs"] = report.total_repairs;
  out["assignments"] = report.final_state.assignments;
  out["centroids"] = matrix_json(report.final_state.centroids);
  out["weights"] = matrix_json(report.final_state.weights);
  out["dispersions"] = matrix_json(report.dispersions.d);
  out["objective_trace"] = report.objective_trace;

  nlohmann::json events = nlohmann::json::array();
  for (const EngineEvent& e : report.events) {
    events.push_back({{"iteration", e.iteration},
                      {"objective", e.objective},
                      {"n_reassigned", e.n_reassigned},
                      {"n_empty_repaired", e.n_empty_repaired}});
  }
  out["events"] = std::move(events);

  if (report.bounds) {
    out["bounds"] = {{"lower", report.bounds->lower},
                     {"upper", report.bounds->upper},
                     {"prefactor", report.bounds->prefactor},
                     {"per_cluster_min", report.bounds->per_cluster_min},
                     {"per_cluster_geomean", report.bounds->per_cluster_geomean}};
  } else {
    out["bounds"] = nullptr;
  }
  out["normalised_objective"] =
      report.normalised_objective ? nlohmann::json(*report.normalised_objective) : nullptr;
  return out;
}

nlohmann::json restarts_to_json(const RestartResult& result, const MwkConfig& config,
                                const Dataset& data) {
  nlohmann::json out = report_to_json(result.best);
  out["k"] = config.k;
  out["p"] = config.p;
  out["n"] = data.n();
  out["m"] = data.m();
  out["tol_objective"] = config.tol_objective;
  out["max_iter"] = config.max_iter;
  out["center_tol"] = config.center_tol;
  out["base_seed"] = config.seed;
  out["best_restart"] = result.best_index;
  out["feature_names"] = data.feature_names;

  nlohmann::json restarts = nlohmann::json::array();
  for (const RunReport& r : result.all) {
    restarts.push_back({{"seed", r.seed},
                        {"objective", r.final_state.objective},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"total_repairs", r.total_repairs},
                        {"normalised_objective", r.normalised_objective
                                                     ? nlohmann::json(*r.normalised_objective)
                                                     : nlohmann::json(nullptr)}});
  }
  out["restarts"] = std::move(restarts);
  return out;
}

}  // namespace mwk::cli
