#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gbb/arms.hpp"
#include "gbb/design.hpp"
#include "gbb/environment.hpp"
#include "gbb/graph.hpp"
#include "gbb/rng.hpp"

namespace gbb {

struct LearnerOptions {
  double sigma = 1.0;
  double delta = 0.1;
  double design_tol = 1e-2;
  int design_max_iter = 100000;
  // Exponent of pi inside the stopping-rule log term; 2 is the default rule,
  // 1 the variant constant.
  int log_pi_exponent = 2;
};

struct StopReport {
  bool stopped = false;
  int candidate = 0;           // edge-arm index
  double worst_margin = 0.0;   // min over rivals of (empirical gap - radius)
  int round = 0;
};

struct RunLogRow {
  long round;
  int candidate;
  double worst_margin;
  double alpha;  // NaN when not tracked
  double wall_time_s;
};

struct RunResult {
  int candidate = 0;
  long rounds = 0;
  bool budget_exhausted = false;
  std::vector<RunLogRow> history;  // one row per stopping check
};

// Randomized allocation learner: samples one node-arm per node iid from the
// G-optimal design, accumulates every edge-arm observation into a ridge
// regression (A starts at the identity), and certifies the best edge-arm via
// a confidence stopping rule over all rival edge-arms.
class Learner {
 public:
  Learner(Graph graph, NodeArmSet node_arms, BilinearParameter param,
          LearnerOptions options, std::uint64_t seed);

  // One round: draw node-arms, observe every directed edge, fold the m
  // rank-one updates into A and b, refresh the estimate.
  void step();

  // Evaluates the confidence rule for the current empirical best edge-arm.
  // Requires at least one completed round. Rivals whose vectors coincide
  // with the candidate (within float tolerance) are skipped: their gap is
  // identically zero and the rule could never fire on them.
  StopReport stopping_condition() const;

  // Steps until the rule fires, checking every check_every rounds (and at
  // the budget boundary). Budget exhaustion is a flagged result.
  RunResult run(long max_rounds, int check_every, bool track_alpha = true);

  // Relative slack of the realized design matrix against the relaxed
  // optimum: max-leverage(A_t) * (m t) / d^2 - 1.
  double relative_error() const;

  long round() const { return round_; }
  Eigen::MatrixXd design_matrix() const;  // A_t, materialized symmetric
  const Eigen::VectorXd& response() const { return b_; }
  const Eigen::VectorXd& estimate() const { return theta_hat_; }
  const Graph& graph() const { return graph_; }
  const EdgeArmSet& edge_arms() const { return edge_arms_; }
  const DesignReport& design_report() const { return design_; }
  const DesignDistribution& sampling_distribution() const {
    return design_.distribution;
  }
  const LearnerOptions& options() const { return options_; }

  // Most recent round's draws, in node order, and rewards, in edge order.
  const std::vector<int>& last_node_draws() const { return last_draws_; }
  const std::vector<double>& last_rewards() const { return last_rewards_; }

  // Fraction of the m*t observations that landed on each edge-arm index.
  std::vector<double> empirical_edge_histogram() const;

  int best_estimate_index() const;  // argmax z . theta_hat, ties lowest index

 private:
  Graph graph_;
  EdgeArmSet edge_arms_;
  BilinearParameter param_;
  LearnerOptions options_;
  DesignReport design_;
  std::vector<double> cdf_;
  NoiseModel noise_;
  Rng rng_;

  long round_ = 0;
  Eigen::MatrixXd a_;  // lower triangle maintained
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd b_;
  Eigen::VectorXd theta_hat_;
  std::vector<int> last_draws_;
  std::vector<double> last_rewards_;
  std::vector<long> edge_counts_;
};

// Relative design slack for an explicit matrix: max_z z^T A^{-1} z * (m t)
// / d^2 - 1, the empirical alpha against the relaxed optimum d^2 / (m t).
double relative_error(const EdgeArmSet& edge_arms, const Eigen::MatrixXd& a,
                      int m, long t);

// Right-hand side of the sample-complexity bound
// 128 sigma^2 d^2 (1+alpha) log(6 m^2 t^2 K^4 / (delta pi)) / (m gap^2),
// evaluated at the supplied t. Diagnostic, not a solver.
double sample_complexity_upper_bound(int d, double sigma, double delta, int m,
                                     int K, double gap_min, double alpha,
                                     double t);

// Closed-form worst case of the information lower bound,
// 4 sigma^2 d^2 / (m gap^2). delta is validated but the worst-case form
// carries no confidence term.
double worst_case_lower_bound(int d, double sigma, int m, double delta,
                              double gap_min);

// Burn-in round count 2 L d^2 log(2 d^2 / delta) / nu_min, with L the max
// squared edge-arm norm and nu_min the smallest eigenvalue of the uniform
// edge-arm second moment.
double burn_in_rounds(const EdgeArmSet& edge_arms, double delta);

// CSV: round, candidate, worst_margin, alpha, wall_time_s.
void write_run_log_csv(std::ostream& out, const RunResult& result);

}  // namespace gbb
