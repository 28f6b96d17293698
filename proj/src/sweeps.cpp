#include "gbb/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "gbb/arms.hpp"
#include "gbb/environment.hpp"

#ifndef GBB_VERSION_STRING
#define GBB_VERSION_STRING "unknown"
#endif

namespace gbb {

namespace {

nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["graph"] = c.graph;
  j["n_nodes"] = c.n_nodes;
  j["m"] = c.m;
  j["kinds"] = c.kinds;
  j["m_grid"] = c.m_grid;
  j["d_grid"] = c.d_grid;
  j["omegas"] = c.omegas;
  j["d"] = c.d;
  j["omega"] = c.omega;
  j["sigma"] = c.sigma;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["repetitions"] = c.repetitions;
  j["max_rounds"] = c.max_rounds;
  j["check_every"] = c.check_every;
  j["workers"] = c.workers;
  j["variance_samples"] = c.variance_samples;
  j["variance_arms"] = c.variance_arms;
  j["out"] = c.out;
  return j;
}

template <typename T>
void assign_if_present(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

// True expected reward of an edge-arm under theta; correctness of a run is
// value-based so coinciding optima (duplicate arms) all count as correct.
bool candidate_is_correct(const EdgeArmSet& edge_arms,
                          const Eigen::VectorXd& theta, int candidate) {
  double best = -std::numeric_limits<double>::infinity();
  for (int z = 0; z < edge_arms.size(); ++z)
    best = std::max(best, edge_arms.vector(z).dot(theta));
  return edge_arms.vector(candidate).dot(theta) >= best - 1e-9;
}

struct LearnTask {
  GraphKind kind;
  int m;
  int d;
  double omega;
  int rep;
};

std::vector<SweepRow> run_learn_tasks(const ExperimentConfig& config,
                                      const std::vector<LearnTask>& tasks,
                                      bool seed_tag_is_d) {
  std::vector<SweepRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), config.workers, [&](int idx) {
    const LearnTask& task = tasks[idx];
    const std::uint64_t seed = sweep_seed(
        config.seed, task.kind, seed_tag_is_d ? task.d : task.m, task.rep);

    const Graph graph = graph_with_edge_count(task.kind, task.m);
    LearnerOptions options;
    options.sigma = config.sigma;
    options.delta = config.delta;
    Learner learner(graph, soare_arm_set(task.d, task.omega),
                    soare_parameter(task.d), options, seed);
    const RunResult result =
        learner.run(config.max_rounds, config.check_every, false);

    SweepRow row;
    row.kind = to_string(task.kind);
    row.m = task.m;
    row.d = task.d;
    row.omega = task.omega;
    row.rep = task.rep;
    row.rounds = result.rounds;
    row.correct = candidate_is_correct(learner.edge_arms(),
                                       soare_parameter(task.d).theta(),
                                       result.candidate)
                      ? 1
                      : 0;
    row.seed = seed;
    row.exhausted = result.budget_exhausted ? 1 : 0;
    rows[idx] = std::move(row);
  });
  return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (check_every < 1) throw std::invalid_argument("check_every must be >= 1");
  if (kinds.empty()) throw std::invalid_argument("kinds must be nonempty");
  for (const auto& kind : kinds) graph_kind_from_string(kind);
  if (experiment == "sweep-edges" || experiment == "sweep-variance") {
    // Every requested m must be realizable by every requested kind.
    for (const auto& kind : kinds)
      for (int mv : m_grid) graph_with_edge_count(graph_kind_from_string(kind), mv);
  }
  if (experiment == "sweep-dim") {
    const int edges = m > 0 ? m : 156;
    for (const auto& kind : kinds)
      graph_with_edge_count(graph_kind_from_string(kind), edges);
    for (int dv : d_grid)
      if (dv < 2) throw std::invalid_argument("d grid entries must be >= 2");
  }
  for (double w : omegas)
    if (!(w > 0.0) || w > 1.5707963267948967)
      throw std::invalid_argument("omega must lie in (0, pi/2]");
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  assign_if_present(j, "experiment", c.experiment);
  assign_if_present(j, "graph", c.graph);
  assign_if_present(j, "n_nodes", c.n_nodes);
  assign_if_present(j, "m", c.m);
  assign_if_present(j, "kinds", c.kinds);
  assign_if_present(j, "m_grid", c.m_grid);
  assign_if_present(j, "d_grid", c.d_grid);
  assign_if_present(j, "omegas", c.omegas);
  assign_if_present(j, "d", c.d);
  assign_if_present(j, "omega", c.omega);
  assign_if_present(j, "sigma", c.sigma);
  assign_if_present(j, "delta", c.delta);
  assign_if_present(j, "seed", c.seed);
  assign_if_present(j, "repetitions", c.repetitions);
  assign_if_present(j, "max_rounds", c.max_rounds);
  assign_if_present(j, "check_every", c.check_every);
  assign_if_present(j, "workers", c.workers);
  assign_if_present(j, "variance_samples", c.variance_samples);
  assign_if_present(j, "variance_arms", c.variance_arms);
  assign_if_present(j, "out", c.out);
  return c;
}

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump(2);
}

std::uint64_t sweep_seed(std::uint64_t master, GraphKind kind, int m_or_d,
                         int rep) {
  return mix_seed(master, static_cast<std::uint64_t>(kind),
                  static_cast<std::uint64_t>(m_or_d),
                  static_cast<std::uint64_t>(rep));
}

void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn) {
  if (n_tasks <= 0) return;
  int n_threads = workers > 0
                      ? workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, n_tasks);
  if (n_threads == 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n_tasks) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<SweepRow> run_sweep_edges(const ExperimentConfig& config) {
  config.validate();
  std::vector<LearnTask> tasks;
  for (const auto& kind_name : config.kinds) {
    const GraphKind kind = graph_kind_from_string(kind_name);
    for (int m : config.m_grid)
      for (double omega : config.omegas)
        for (int rep = 0; rep < config.repetitions; ++rep)
          tasks.push_back({kind, m, config.d, omega, rep});
  }
  return run_learn_tasks(config, tasks, false);
}

std::vector<SweepRow> run_sweep_dimension(const ExperimentConfig& config) {
  config.validate();
  const int edges = config.m > 0 ? config.m : 156;
  std::vector<LearnTask> tasks;
  for (const auto& kind_name : config.kinds) {
    const GraphKind kind = graph_kind_from_string(kind_name);
    for (int d : config.d_grid)
      for (double omega : config.omegas)
        for (int rep = 0; rep < config.repetitions; ++rep)
          tasks.push_back({kind, edges, d, omega, rep});
  }
  return run_learn_tasks(config, tasks, true);
}

std::vector<VarianceEstimate> run_variance_experiment(
    const ExperimentConfig& config) {
  config.validate();
  const NodeArmSet arms = random_unit_arms(config.variance_arms, config.d,
                                           mix_seed(config.seed, 0xa735));
  const DesignReport design = frank_wolfe_design(arms.arms());

  struct Point {
    GraphKind kind;
    int m;
  };
  std::vector<Point> points;
  for (const auto& kind_name : config.kinds)
    for (int m : config.m_grid)
      points.push_back({graph_kind_from_string(kind_name), m});

  std::vector<VarianceEstimate> estimates(points.size());
  parallel_for(static_cast<int>(points.size()), config.workers, [&](int idx) {
    const Graph graph = graph_with_edge_count(points[idx].kind, points[idx].m);
    estimates[idx] =
        variance_norm(graph, arms, design.distribution, config.variance_samples,
                      sweep_seed(config.seed, points[idx].kind, points[idx].m, 0),
                      200);
  });
  return estimates;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "kind,m,d,omega,rep,rounds,correct,seed,exhausted\n";
  for (const auto& r : rows)
    out << r.kind << ',' << r.m << ',' << r.d << ',' << r.omega << ',' << r.rep
        << ',' << r.rounds << ',' << r.correct << ',' << r.seed << ','
        << r.exhausted << '\n';
}

std::string run_manifest(const ExperimentConfig& config,
                         const std::string& subcommand, double wall_seconds) {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config"] = config_json(config);
  j["version"] = GBB_VERSION_STRING;
  j["wall_time_s"] = wall_seconds;
  return j.dump(2);
}

}  // namespace gbb
