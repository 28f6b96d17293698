#include "gbb/learner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gbb {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rivals closer than this (sup-norm, relative) are treated as duplicates of
// the candidate; exact duplicates drift a few ulps once trigonometry is
// involved (cos(pi/2) != 0 in doubles).
bool near_duplicate(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
  return (a - b).lpNorm<Eigen::Infinity>() <= 1e-9 * scale;
}

}  // namespace

Learner::Learner(Graph graph, NodeArmSet node_arms, BilinearParameter param,
                 LearnerOptions options, std::uint64_t seed)
    : graph_(std::move(graph)),
      edge_arms_(EdgeArmSet(std::move(node_arms))),
      param_(std::move(param)),
      options_(options),
      design_(frank_wolfe_design(edge_arms_.base().arms(), options.design_tol,
                                 options.design_max_iter)),
      noise_{options.sigma, NoiseModel::Kind::gaussian},
      rng_(make_rng(seed)) {
  if (param_.dim() != edge_arms_.base().dim())
    throw std::invalid_argument("learner: parameter/arm dimension mismatch");
  if (!(options_.delta > 0.0 && options_.delta < 1.0))
    throw std::invalid_argument("learner: delta must lie in (0, 1)");
  if (options_.sigma < 0.0)
    throw std::invalid_argument("learner: sigma must be nonnegative");

  const std::vector<double> w(design_.distribution.weights().data(),
                              design_.distribution.weights().data() +
                                  design_.distribution.size());
  cdf_ = cumulative_weights(w);

  const int p = edge_arms_.dim();
  a_ = Eigen::MatrixXd::Identity(p, p);
  chol_.compute(a_);
  b_ = Eigen::VectorXd::Zero(p);
  theta_hat_ = Eigen::VectorXd::Zero(p);
  edge_counts_.assign(edge_arms_.size(), 0);
}

void Learner::step() {
  const int n = graph_.n_nodes();
  last_draws_.resize(n);
  for (int i = 0; i < n; ++i) last_draws_[i] = draw_index(cdf_, rng_);

  last_rewards_.clear();
  last_rewards_.reserve(graph_.m());
  const auto& arms = edge_arms_.base();
  for (const auto& [i, j] : graph_.edges()) {
    const int z_index = edge_arms_.index(last_draws_[i], last_draws_[j]);
    const Eigen::VectorXd& z = edge_arms_.vector(z_index);
    const double r = sample_reward(arms.arm(last_draws_[i]),
                                   arms.arm(last_draws_[j]), param_, noise_,
                                   rng_);
    a_.selfadjointView<Eigen::Lower>().rankUpdate(z);
    b_ += z * r;
    edge_counts_[z_index] += 1;
    last_rewards_.push_back(r);
  }

  chol_.compute(a_);
  if (chol_.info() != Eigen::Success)
    throw std::runtime_error("learner: design matrix lost positive definiteness");
  theta_hat_ = chol_.solve(b_);
  round_ += 1;
}

int Learner::best_estimate_index() const {
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int z = 0; z < edge_arms_.size(); ++z) {
    const double value = edge_arms_.vector(z).dot(theta_hat_);
    if (value > best_value) {
      best_value = value;
      best = z;
    }
  }
  return best;
}

StopReport Learner::stopping_condition() const {
  if (round_ < 1)
    throw std::logic_error("stopping_condition needs at least one round");

  const int candidate = best_estimate_index();
  const Eigen::VectorXd& zc = edge_arms_.vector(candidate);
  const double candidate_value = zc.dot(theta_hat_);

  const double m = static_cast<double>(graph_.m());
  const double t = static_cast<double>(round_);
  const double K = static_cast<double>(edge_arms_.base().size());
  const double log_arg = 6.0 * m * m * t * t * std::pow(K, 4) /
                         (options_.delta * std::pow(kPi, options_.log_pi_exponent));
  const double width =
      std::sqrt(8.0 * options_.sigma * options_.sigma * std::log(log_arg));

  double worst_margin = std::numeric_limits<double>::infinity();
  for (int z = 0; z < edge_arms_.size(); ++z) {
    if (z == candidate) continue;
    const Eigen::VectorXd& zv = edge_arms_.vector(z);
    if (near_duplicate(zc, zv)) continue;
    const Eigen::VectorXd diff = zc - zv;
    const double gap = candidate_value - zv.dot(theta_hat_);
    const double norm = std::sqrt(diff.dot(chol_.solve(diff)));
    worst_margin = std::min(worst_margin, gap - norm * width);
  }

  StopReport report;
  report.candidate = candidate;
  report.round = static_cast<int>(round_);
  report.worst_margin = worst_margin;
  report.stopped = worst_margin >= 0.0;
  return report;
}

RunResult Learner::run(long max_rounds, int check_every, bool track_alpha) {
  if (max_rounds < 0) throw std::invalid_argument("run: negative budget");
  if (check_every < 1) throw std::invalid_argument("run: check_every >= 1");

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  for (long t = 1; t <= max_rounds; ++t) {
    step();
    if (t % check_every == 0 || t == max_rounds) {
      const StopReport report = stopping_condition();
      const double alpha = track_alpha
                               ? relative_error()
                               : std::numeric_limits<double>::quiet_NaN();
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      result.history.push_back(
          {t, report.candidate, report.worst_margin, alpha, wall});
      if (report.stopped) {
        result.candidate = report.candidate;
        result.rounds = t;
        result.budget_exhausted = false;
        return result;
      }
    }
  }
  result.candidate = round_ >= 1 ? best_estimate_index() : 0;
  result.rounds = max_rounds;
  result.budget_exhausted = true;
  return result;
}

Eigen::MatrixXd Learner::design_matrix() const {
  return a_.selfadjointView<Eigen::Lower>();
}

double Learner::relative_error() const {
  if (round_ < 1) throw std::logic_error("relative_error needs t >= 1");
  double worst = 0.0;
  for (int z = 0; z < edge_arms_.size(); ++z) {
    const Eigen::VectorXd& zv = edge_arms_.vector(z);
    worst = std::max(worst, zv.dot(chol_.solve(zv)));
  }
  const double d2 = static_cast<double>(edge_arms_.dim());
  return worst * static_cast<double>(graph_.m()) * static_cast<double>(round_) /
             d2 -
         1.0;
}

std::vector<double> Learner::empirical_edge_histogram() const {
  std::vector<double> hist(edge_counts_.size(), 0.0);
  const double total = static_cast<double>(graph_.m()) * std::max(round_, 1L);
  for (std::size_t z = 0; z < edge_counts_.size(); ++z)
    hist[z] = edge_counts_[z] / total;
  return hist;
}

double relative_error(const EdgeArmSet& edge_arms, const Eigen::MatrixXd& a,
                      int m, long t) {
  if (t < 1) throw std::invalid_argument("relative_error needs t >= 1");
  const double worst = max_leverage(edge_arms.vectors(), a);
  const double d2 = static_cast<double>(edge_arms.dim());
  return worst * static_cast<double>(m) * static_cast<double>(t) / d2 - 1.0;
}

double sample_complexity_upper_bound(int d, double sigma, double delta, int m,
                                     int K, double gap_min, double alpha,
                                     double t) {
  if (!(gap_min > 0.0))
    throw std::invalid_argument("sample complexity bound needs gap_min > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  const double log_arg = 6.0 * double(m) * m * t * t * std::pow(double(K), 4) /
                         (delta * kPi);
  return 128.0 * sigma * sigma * d * d * (1.0 + alpha) * std::log(log_arg) /
         (m * gap_min * gap_min);
}

double worst_case_lower_bound(int d, double sigma, int m, double delta,
                              double gap_min) {
  if (!(gap_min > 0.0))
    throw std::invalid_argument("lower bound needs gap_min > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  return 4.0 * sigma * sigma * d * d / (m * gap_min * gap_min);
}

double burn_in_rounds(const EdgeArmSet& edge_arms, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  const double L = edge_arms.max_squared_norm();
  const double d2 = static_cast<double>(edge_arms.dim());
  const double nu_min = min_second_moment_eigenvalue(edge_arms.vectors());
  return 2.0 * L * d2 * std::log(2.0 * d2 / delta) / nu_min;
}

void write_run_log_csv(std::ostream& out, const RunResult& result) {
  out << "round,candidate,worst_margin,alpha,wall_time_s\n";
  for (const auto& row : result.history) {
    out << row.round << ',' << row.candidate << ',' << row.worst_margin << ','
        << row.alpha << ',' << row.wall_time_s << '\n';
  }
}

}  // namespace gbb
