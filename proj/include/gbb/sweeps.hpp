#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gbb/graph.hpp"
#include "gbb/learner.hpp"
#include "gbb/variance.hpp"

namespace gbb {

// One configuration drives every subcommand; unused fields are ignored by
// the experiment that does not need them. JSON config files mirror the field
// names exactly.
struct ExperimentConfig {
  std::string experiment = "sweep-edges";

  // Single-run inputs (learn / allocate / variance).
  std::string graph = "circle";
  int n_nodes = 10;
  int m = 0;  // when > 0, overrides n_nodes via the family's edge-count rule

  // Sweep grids.
  std::vector<std::string> kinds = {"star", "complete", "circle", "matching"};
  std::vector<int> m_grid = {12, 30, 56, 90, 132, 156};
  std::vector<int> d_grid = {2, 3, 4, 5};
  std::vector<double> omegas = {0.1, 1.5707963267948966};

  int d = 5;
  double omega = 0.1;
  double sigma = 1.0;
  double delta = 0.1;
  std::uint64_t seed = 1;
  int repetitions = 100;
  long max_rounds = 1000000;
  int check_every = 10;
  int workers = 0;  // 0 = hardware concurrency
  int variance_samples = 100;
  int variance_arms = 100;  // K for the variance experiment
  std::string out = "";

  void validate() const;
};

ExperimentConfig config_from_json_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

struct SweepRow {
  std::string kind;
  int m = 0;
  int d = 0;
  double omega = 0.0;
  int rep = 0;
  long rounds = 0;
  int correct = 0;
  std::uint64_t seed = 0;
  int exhausted = 0;
};

// Rounds-to-stop versus edge count: for each (kind, m, omega) the learner
// runs `repetitions` times on the rotated-basis benchmark at dimension d.
std::vector<SweepRow> run_sweep_edges(const ExperimentConfig& config);

// Rounds-to-stop versus dimension at a fixed edge count (config.m, default
// 156), sweeping config.d_grid.
std::vector<SweepRow> run_sweep_dimension(const ExperimentConfig& config);

// || Var(A1) || per (kind, m) on K random unit arms in R^d.
std::vector<VarianceEstimate> run_variance_experiment(
    const ExperimentConfig& config);

// CSV: kind, m, d, omega, rep, rounds, correct, seed, exhausted.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// JSON manifest: subcommand, config echo, version, wall time.
std::string run_manifest(const ExperimentConfig& config,
                         const std::string& subcommand, double wall_seconds);

// Index-parallel loop over [0, n_tasks) with at most `workers` threads
// (0 = hardware concurrency). Tasks must be independent.
void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn);

// Seed for one sweep row, derived from (master, kind, m-or-d, rep).
std::uint64_t sweep_seed(std::uint64_t master, GraphKind kind, int m_or_d,
                         int rep);

}  // namespace gbb
