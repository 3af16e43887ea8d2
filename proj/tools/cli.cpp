#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiment.hpp"
#include "mwk/data.hpp"
#include "mwk/engine.hpp"
#include "mwk/error.hpp"
#include "output.hpp"
#include "report_json.hpp"
#include "verify.hpp"

namespace mwk::cli {

namespace {

namespace fs = std::filesystem;

struct ClusterArgs {
  fs::path input;
  fs::path out;
  bool labels = false;
  bool normalise = false;
  bool trace = false;
  MwkConfig config;
  unsigned threads = 1;
};

struct GenerateArgs {
  data::SyntheticSpec spec;
  fs::path out;
  bool normalise = false;
};

struct ExperimentArgs {
  ExperimentSpec spec;
  unsigned threads = 0;
  bool quiet = false;
};

void add_dataset_flags(CLI::App& cmd, data::SyntheticSpec& spec) {
  cmd.add_option("--n-points", spec.n_points, "Points per dataset")->capture_default_str();
  cmd.add_option("--n-informative", spec.n_informative, "Gaussian-mixture features")
      ->capture_default_str();
  cmd.add_option("--n-noise", spec.n_noise, "Uniform [0,1] noise features")->capture_default_str();
  cmd.add_option("--k-true", spec.k_true, "Mixture components")->capture_default_str();
  cmd.add_option("--cluster-std", spec.cluster_std, "Per-coordinate component std")
      ->capture_default_str();
  cmd.add_option("--center-min", spec.center_min, "Lower edge of the centre box")
      ->capture_default_str();
  cmd.add_option("--center-max", spec.center_max, "Upper edge of the centre box")
      ->capture_default_str();
}

int cmd_cluster(const ClusterArgs& args, std::ostream& out) {
  Dataset data = data::load_csv(args.input, args.labels);
  if (args.normalise) data = data::range_normalise(data).dataset;
  args.config.validate(data.n());

  const RestartResult result = run_restarts(data, args.config, args.threads);
  const nlohmann::json doc = restarts_to_json(result, args.config, data);

  if (args.trace) {
    for (const EngineEvent& e : result.best.events) {
      out << "iter " << e.iteration << " objective " << format_number(e.objective)
          << " reassigned " << e.n_reassigned << " repaired " << e.n_empty_repaired << "\n";
    }
  }
  if (args.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    write_text_file(args.out, doc.dump(2) + "\n");
    out << "best restart " << result.best_index << " objective "
        << format_number(result.best.final_state.objective) << " normalised "
        << format_number(result.best.normalised_objective.value_or(0.0)) << " -> "
        << args.out.string() << "\n";
  }
  return kExitOk;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  args.spec.validate();
  const data::SyntheticData synth = data::generate(args.spec);

  Dataset dataset = synth.dataset;
  if (args.normalise) {
    const auto normalised = data::range_normalise(dataset);
    dataset = normalised.dataset;
    fs::path stats_path = args.out;
    stats_path.replace_extension(".norm.json");
    write_text_file(stats_path, data::stats_to_json(normalised.stats));
  }
  data::save_csv(dataset, args.out);

  nlohmann::json sidecar = {
      {"n_points", args.spec.n_points},
      {"n_informative", args.spec.n_informative},
      {"n_noise", args.spec.n_noise},
      {"k_true", args.spec.k_true},
      {"seed", args.spec.seed},
      {"cluster_std", args.spec.cluster_std},
      {"center_min", args.spec.center_min},
      {"center_max", args.spec.center_max},
      {"normalised", args.normalise},
      {"true_centers", synth.true_centers.to_rows()},
  };
  fs::path spec_path = args.out;
  spec_path.replace_extension(".spec.json");
  write_text_file(spec_path, sidecar.dump(2) + "\n");

  out << "wrote " << dataset.n() << "x" << dataset.m() << " dataset to " << args.out.string()
      << "\n";
  return kExitOk;
}

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  args.spec.validate();
  ExperimentProgress progress;
  if (!args.quiet) {
    progress = [&err](std::size_t done, std::size_t total) {
      if (done == total || done % std::max<std::size_t>(1, total / 20) == 0) {
        err << "\r" << done << "/" << total << " runs" << (done == total ? "\n" : "")
            << std::flush;
      }
    };
  }
  const ExperimentResult result = run_experiment(args.spec, args.threads, progress);
  write_experiment(result, args.spec);

  out << std::left << std::setw(8) << "p" << std::setw(12) << "runs" << std::setw(16)
      << "mean_norm_obj" << std::setw(16) << "w_informative" << "w_noise\n";
  for (const ExponentSummary& s : result.summaries) {
    out << std::left << std::setw(8) << format_number(s.p) << std::setw(12) << s.runs
        << std::setw(16) << std::setprecision(6) << s.mean_normalised << std::setw(16)
        << s.mean_informative_weight << s.mean_noise_weight << "\n";
  }
  out << "outputs written to " << args.spec.output_dir.string() << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const auto& names = verification_check_names();
  if (!options.inject_fault.empty() &&
      std::find(names.begin(), names.end(), options.inject_fault) == names.end()) {
    throw Error(Errc::InvalidConfig, "unknown check '" + options.inject_fault + "'");
  }
  const auto results = run_verification(options);
  const CheckResult* first_failure = nullptr;
  out << std::left << std::setw(24) << "check" << std::setw(10) << "cases" << std::setw(8)
      << "status" << "worst\n";
  for (const CheckResult& r : results) {
    out << std::left << std::setw(24) << r.name << std::setw(10) << r.cases << std::setw(8)
        << (r.passed ? "PASS" : "FAIL") << std::setprecision(3) << r.worst << "\n";
    if (!r.passed && !first_failure) first_failure = &r;
  }
  if (first_failure) {
    err << "verification failed: " << first_failure->name << ": " << first_failure->detail << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::Usage: return kExitUsage;
    case ErrorClass::Io: return kExitIo;
    case ErrorClass::Numeric: return kExitNumeric;
  }
  return kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minkowski weighted k-means: clustering, synthetic data, experiments and checks",
               "mwk"};
  app.require_subcommand(1);

  ClusterArgs cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a CSV dataset (best of --restarts)");
  cluster_cmd->add_option("--input,-i", cluster.input, "Input CSV")->required();
  cluster_cmd->add_option("--out,-o", cluster.out, "Report JSON path (stdout if omitted)");
  cluster_cmd->add_flag("--labels", cluster.labels, "Last CSV column holds ground-truth labels");
  cluster_cmd->add_flag("--normalise", cluster.normalise, "Range-normalise features first");
  cluster_cmd->add_flag("--trace", cluster.trace, "Print the best run's per-iteration events");
  cluster_cmd->add_option("--k", cluster.config.k, "Number of clusters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cluster_cmd->add_option("--p", cluster.config.p, "Minkowski exponent (> 1)")
      ->capture_default_str();
  cluster_cmd->add_option("--seed", cluster.config.seed, "Seed of the first restart")
      ->capture_default_str();
  cluster_cmd->add_option("--restarts", cluster.config.restarts, "Random initialisations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cluster_cmd->add_option("--tol", cluster.config.tol_objective, "Relative objective tolerance")
      ->capture_default_str();
  cluster_cmd->add_option("--max-iter", cluster.config.max_iter, "Iteration cap per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cluster_cmd->add_option("--center-tol", cluster.config.center_tol, "Centre solver tolerance")
      ->capture_default_str();
  cluster_cmd->add_option("--threads", cluster.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic Gaussian-mixture CSV");
  add_dataset_flags(*generate_cmd, generate.spec);
  generate_cmd->add_option("--seed", generate.spec.seed, "Generator seed")->capture_default_str();
  generate_cmd->add_option("--out,-o", generate.out, "Output CSV")->required();
  generate_cmd->add_flag("--normalise", generate.normalise,
                         "Range-normalise and write <out>.norm.json");

  ExperimentArgs experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Datasets x exponents x restarts; writes plot tables");
  add_dataset_flags(*experiment_cmd, experiment.spec.dataset_spec);
  experiment_cmd->add_option("--p-values", experiment.spec.p_values, "Comma-separated exponents")
      ->delimiter(',')
      ->capture_default_str();
  experiment_cmd->add_option("--n-datasets", experiment.spec.n_datasets, "Synthetic datasets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd->add_option("--restarts", experiment.spec.restarts_per_dataset,
                             "Random initialisations per dataset and p")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd->add_option("--seed", experiment.spec.dataset_spec.seed,
                             "Seed of dataset 0 (dataset d uses seed + d)")
      ->capture_default_str();
  experiment_cmd->add_option("--run-seed", experiment.spec.run_seed, "Base seed for restarts")
      ->capture_default_str();
  experiment_cmd->add_option("--k", experiment.spec.k, "Clusters (0 = --k-true)")
      ->capture_default_str();
  experiment_cmd->add_option("--tol", experiment.spec.tol_objective, "Relative objective tolerance")
      ->capture_default_str();
  experiment_cmd->add_option("--max-iter", experiment.spec.max_iter, "Iteration cap per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd->add_option("--center-tol", experiment.spec.center_tol, "Centre solver tolerance")
      ->capture_default_str();
  experiment_cmd->add_option("--out-dir,-o", experiment.spec.output_dir, "Output directory")
      ->required();
  experiment_cmd->add_option("--threads", experiment.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  experiment_cmd->add_flag("--quiet,-q", experiment.quiet, "No progress output");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Randomised checks of identities and bounds");
  verify_cmd->add_option("--trials", verify.trials, "Random instances per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  verify_cmd->add_option("--inject-fault", verify.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n"
        << "run with --help for more information\n";
    return kExitUsage;
  }

  try {
    if (*cluster_cmd) return cmd_cluster(cluster, out);
    if (*generate_cmd) return cmd_generate(generate, out);
    if (*experiment_cmd) return cmd_experiment(experiment, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mwk::cli
