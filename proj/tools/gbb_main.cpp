// Command-line front end: every pipeline stage is a subcommand, configs come
// from JSON files with flag overrides, results go out as CSV plus a JSON
// run manifest.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "gbb/allocation.hpp"
#include "gbb/arms.hpp"
#include "gbb/design.hpp"
#include "gbb/environment.hpp"
#include "gbb/graph.hpp"
#include "gbb/learner.hpp"
#include "gbb/sweeps.hpp"
#include "gbb/variance.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_output(path);
  out << text << '\n';
}

gbb::Graph build_graph(const std::string& kind_name, const std::string& file,
                       int n_nodes, int m) {
  if (kind_name == "file") {
    if (file.empty())
      throw std::invalid_argument("--graph file requires --graph-file");
    return gbb::read_edge_list_file(file);
  }
  const gbb::GraphKind kind = gbb::graph_kind_from_string(kind_name);
  if (m > 0) return gbb::graph_with_edge_count(kind, m);
  switch (kind) {
    case gbb::GraphKind::star: return gbb::make_star(n_nodes);
    case gbb::GraphKind::complete: return gbb::make_complete(n_nodes);
    case gbb::GraphKind::circle: return gbb::make_circle(n_nodes);
    case gbb::GraphKind::matching: return gbb::make_matching(n_nodes);
    case gbb::GraphKind::custom: break;
  }
  throw std::invalid_argument("custom graphs must come from --graph-file");
}

void emit_sweep_outputs(const gbb::ExperimentConfig& config,
                        const std::vector<gbb::SweepRow>& rows,
                        const std::string& subcommand, double wall_seconds) {
  if (config.out.empty()) {
    gbb::write_sweep_csv(std::cout, rows);
    return;
  }
  auto csv = open_output(config.out);
  gbb::write_sweep_csv(csv, rows);
  write_text(config.out + ".manifest.json",
             gbb::run_manifest(config, subcommand, wall_seconds));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphical bilinear bandit simulator"};
  app.require_subcommand(1);

  // Shared knobs; each subcommand reads the ones it needs.
  std::string config_path, out_path, graph_name = "circle", graph_file;
  std::string arms_path, matrix_path;
  int n_nodes = 10, m = 0, d = 5, reps = -1, check_every = -1, workers = -1;
  long max_rounds = -1;
  double omega = 0.1, sigma = 1.0, delta = 0.1, tol = 1e-2;
  int max_iter = 100000, samples = -1, variance_arms = -1;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
  };

  CLI::App* design = app.add_subcommand("design", "solve the G-optimal design");
  design->add_option("--arms", arms_path, "node-arm CSV")->required();
  design->add_option("--tol", tol, "certificate slack");
  design->add_option("--max-iter", max_iter, "iteration budget");
  add_common(design);

  CLI::App* learn = app.add_subcommand("learn", "run the allocation learner");
  learn->add_option("--graph", graph_name, "star|complete|circle|matching|file");
  learn->add_option("--graph-file", graph_file, "edge-list file");
  learn->add_option("--n", n_nodes, "node count");
  learn->add_option("--m", m, "edge count (overrides --n)");
  learn->add_option("--arms", arms_path, "node-arm CSV (default: rotated basis)");
  learn->add_option("--m-matrix", matrix_path, "parameter CSV (default benchmark)");
  learn->add_option("--d", d, "dimension for the default arm set");
  learn->add_option("--omega", omega, "rotation of the benchmark arm");
  learn->add_option("--sigma", sigma, "noise scale");
  learn->add_option("--delta", delta, "confidence level");
  learn->add_option("--max-rounds", max_rounds, "round budget");
  learn->add_option("--check-every", check_every, "stopping-check period");
  add_common(learn);

  CLI::App* allocate = app.add_subcommand("allocate", "best-pair graph allocation");
  allocate->add_option("--graph", graph_name, "star|complete|circle|matching|file");
  allocate->add_option("--graph-file", graph_file, "edge-list file");
  allocate->add_option("--n", n_nodes, "node count");
  allocate->add_option("--m", m, "edge count (overrides --n)");
  allocate->add_option("--arms", arms_path, "node-arm CSV")->required();
  allocate->add_option("--m-matrix", matrix_path, "parameter CSV")->required();
  add_common(allocate);

  CLI::App* variance = app.add_subcommand("variance", "variance of one round");
  variance->add_option("--graph", graph_name, "graph family");
  variance->add_option("--m", m, "edge count")->required();
  variance->add_option("--d", d, "arm dimension");
  variance->add_option("--arms-count", variance_arms, "number of random arms");
  variance->add_option("--samples", samples, "Monte-Carlo samples");
  add_common(variance);

  CLI::App* sweep_edges = app.add_subcommand("sweep-edges", "rounds vs edges");
  CLI::App* sweep_dim = app.add_subcommand("sweep-dim", "rounds vs dimension");
  CLI::App* sweep_var = app.add_subcommand("sweep-variance", "variance vs edges");
  for (CLI::App* cmd : {sweep_edges, sweep_dim, sweep_var}) {
    cmd->add_option("--reps", reps, "repetitions per cell");
    cmd->add_option("--d", d, "arm dimension");
    cmd->add_option("--m", m, "fixed edge count (sweep-dim)");
    cmd->add_option("--omega", omega, "single rotation value");
    cmd->add_option("--sigma", sigma, "noise scale");
    cmd->add_option("--delta", delta, "confidence level");
    cmd->add_option("--max-rounds", max_rounds, "round budget");
    cmd->add_option("--check-every", check_every, "stopping-check period");
    cmd->add_option("--samples", samples, "Monte-Carlo samples");
    cmd->add_option("--arms-count", variance_arms, "random arms (variance)");
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started)
        .count();
  };

  try {
    // Sweep-style subcommands share the JSON config path.
    auto load_config = [&](const std::string& experiment) {
      gbb::ExperimentConfig config;
      if (!config_path.empty()) config = gbb::config_from_json_file(config_path);
      config.experiment = experiment;
      auto overridden = [&](const CLI::App* cmd, const char* flag) {
        return cmd->count(flag) > 0;
      };
      const CLI::App* cmd = app.get_subcommands().front();
      if (overridden(cmd, "--seed")) config.seed = seed;
      if (overridden(cmd, "--out")) config.out = out_path;
      if (overridden(cmd, "--reps")) config.repetitions = reps;
      if (overridden(cmd, "--d")) config.d = d;
      if (overridden(cmd, "--m")) config.m = m;
      if (overridden(cmd, "--omega")) config.omegas = {omega};
      if (overridden(cmd, "--sigma")) config.sigma = sigma;
      if (overridden(cmd, "--delta")) config.delta = delta;
      if (overridden(cmd, "--max-rounds")) config.max_rounds = max_rounds;
      if (overridden(cmd, "--check-every")) config.check_every = check_every;
      if (overridden(cmd, "--workers")) config.workers = workers;
      if (overridden(cmd, "--samples")) config.variance_samples = samples;
      if (overridden(cmd, "--arms-count")) config.variance_arms = variance_arms;
      return config;
    };

    if (design->parsed()) {
      const gbb::NodeArmSet arms = gbb::read_arms_csv_file(arms_path);
      const gbb::DesignReport report =
          gbb::frank_wolfe_design(arms.arms(), tol, max_iter);
      const std::string json = gbb::design_report_to_json(report);
      if (out_path.empty())
        std::cout << json << '\n';
      else
        write_text(out_path, json);
      return kExitOk;
    }

    if (learn->parsed()) {
      const gbb::Graph graph = build_graph(graph_name, graph_file, n_nodes, m);
      gbb::NodeArmSet arms = arms_path.empty()
                                 ? gbb::soare_arm_set(d, omega)
                                 : gbb::read_arms_csv_file(arms_path);
      gbb::BilinearParameter param =
          matrix_path.empty()
              ? gbb::soare_parameter(arms.dim())
              : gbb::BilinearParameter(gbb::read_matrix_csv_file(matrix_path));
      gbb::LearnerOptions options;
      options.sigma = sigma;
      options.delta = delta;
      gbb::Learner learner(graph, std::move(arms), std::move(param), options,
                           seed);
      const long budget = max_rounds > 0 ? max_rounds : 1000000;
      const int period = check_every > 0 ? check_every : 10;
      const gbb::RunResult result = learner.run(budget, period);

      if (out_path.empty()) {
        gbb::write_run_log_csv(std::cout, result);
      } else {
        auto out = open_output(out_path);
        gbb::write_run_log_csv(out, result);
      }
      const auto pair = learner.edge_arms().at(result.candidate);
      std::cerr << "candidate edge-arm " << result.candidate << " = ("
                << pair.left_index << ", " << pair.right_index << ") after "
                << result.rounds << " rounds"
                << (result.budget_exhausted ? " [budget exhausted]" : "")
                << " [" << wall() << " s]\n";
      return kExitOk;
    }

    if (allocate->parsed()) {
      const gbb::Graph graph = build_graph(graph_name, graph_file, n_nodes, m);
      const gbb::NodeArmSet arms = gbb::read_arms_csv_file(arms_path);
      const Eigen::MatrixXd m_matrix = gbb::read_matrix_csv_file(matrix_path);
      const gbb::BilinearParameter param(m_matrix);
      const gbb::Allocation allocation =
          gbb::bipartite_allocation(graph, arms, m_matrix);

      if (out_path.empty()) {
        gbb::write_allocation_csv(std::cout, allocation);
      } else {
        auto out = open_output(out_path);
        gbb::write_allocation_csv(out, allocation);
      }
      const double reward =
          gbb::global_reward(allocation.arm_index, graph, arms, param);
      std::cerr << "pair (" << allocation.star_pair.left << ", "
                << allocation.star_pair.right << "), reward " << reward;
      try {
        const gbb::RewardSummary summary =
            gbb::evaluate_allocation(graph, arms, param, allocation);
        std::cerr << ", best " << summary.best << ", worst " << summary.worst
                  << ", ratio " << summary.ratio;
      } catch (const std::invalid_argument&) {
        // Instance too large for the brute-force extremes; reward only.
      }
      std::cerr << '\n';
      return kExitOk;
    }

    if (variance->parsed()) {
      gbb::ExperimentConfig config = load_config("variance");
      const gbb::GraphKind kind = gbb::graph_kind_from_string(graph_name);
      const gbb::NodeArmSet arms =
          gbb::random_unit_arms(config.variance_arms, config.d,
                                gbb::mix_seed(config.seed, 0xa735));
      const gbb::DesignReport report = gbb::frank_wolfe_design(arms.arms());
      const gbb::Graph graph = gbb::graph_with_edge_count(kind, config.m);
      const gbb::VarianceEstimate estimate = gbb::variance_norm(
          graph, arms, report.distribution, config.variance_samples,
          gbb::sweep_seed(config.seed, kind, config.m, 0), 200);
      std::vector<gbb::VarianceEstimate> rows{estimate};
      if (config.out.empty()) {
        gbb::write_variance_csv(std::cout, rows);
      } else {
        auto out = open_output(config.out);
        gbb::write_variance_csv(out, rows);
        write_text(config.out + ".manifest.json",
                   gbb::run_manifest(config, "variance", wall()));
      }
      return kExitOk;
    }

    if (sweep_edges->parsed()) {
      gbb::ExperimentConfig config = load_config("sweep-edges");
      const auto rows = gbb::run_sweep_edges(config);
      emit_sweep_outputs(config, rows, "sweep-edges", wall());
      return kExitOk;
    }

    if (sweep_dim->parsed()) {
      gbb::ExperimentConfig config = load_config("sweep-dim");
      const auto rows = gbb::run_sweep_dimension(config);
      emit_sweep_outputs(config, rows, "sweep-dim", wall());
      return kExitOk;
    }

    if (sweep_var->parsed()) {
      gbb::ExperimentConfig config = load_config("sweep-variance");
      const auto estimates = gbb::run_variance_experiment(config);
      if (config.out.empty()) {
        gbb::write_variance_csv(std::cout, estimates);
      } else {
        auto out = open_output(config.out);
        gbb::write_variance_csv(out, estimates);
        write_text(config.out + ".manifest.json",
                   gbb::run_manifest(config, "sweep-variance", wall()));
      }
      return kExitOk;
    }
  } catch (const gbb::DesignConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::cerr << app.help() << '\n';
  return kExitUsage;
}
