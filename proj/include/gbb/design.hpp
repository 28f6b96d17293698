#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbb {

// Simplex weight vector over an indexed arm set. Entries >= 0 and sum to 1
// within 1e-12; weights below support_threshold are treated as zero when
// reporting the support.
class DesignDistribution {
 public:
  explicit DesignDistribution(Eigen::VectorXd weights,
                              double support_threshold = 1e-8);

  int size() const { return static_cast<int>(weights_.size()); }
  double weight(int k) const { return weights_[k]; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double support_threshold() const { return support_threshold_; }
  std::vector<int> support() const;

  static DesignDistribution uniform(int k);
  static DesignDistribution point_mass(int k, int at);

 private:
  Eigen::VectorXd weights_;
  double support_threshold_;
};

struct DesignReport {
  DesignDistribution distribution;
  double objective = std::numeric_limits<double>::infinity();
  int iterations = 0;
  // Slack above the equivalence-theorem optimum (= ambient dimension).
  double certificate_gap = std::numeric_limits<double>::infinity();
  bool jittered = false;
};

// Thrown when the solver exhausts its iteration budget; carries the last
// iterate so callers can inspect how far it got.
class DesignConvergenceError : public std::runtime_error {
 public:
  DesignConvergenceError(const std::string& what, DesignReport last)
      : std::runtime_error(what), report(std::move(last)) {}
  DesignReport report;
};

// Weighted second-moment matrix sum_k w_k x_k x_k^T. Symmetric PSD.
Eigen::MatrixXd design_covariance(const std::vector<Eigen::VectorXd>& arms,
                                  const DesignDistribution& dist);

// Max leverage max_x x^T Sigma(dist)^{-1} x. Returns +infinity when the
// design covariance is numerically singular.
double max_leverage(const std::vector<Eigen::VectorXd>& arms,
                    const DesignDistribution& dist);

// Max leverage under an explicit Gram matrix: max_x x^T A^{-1} x.
// Throws on a non-positive-definite A.
double max_leverage(const std::vector<Eigen::VectorXd>& arms,
                    const Eigen::MatrixXd& gram);

// Minimizes the max leverage over the simplex with Frank-Wolfe steps: the
// descent vertex is the point mass on the worst-leverage arm and the step
// size is the closed-form Fedorov-Wynn exact step. Stops once the
// equivalence-theorem certificate max-leverage <= p*(1+tol) holds.
DesignReport frank_wolfe_design(const std::vector<Eigen::VectorXd>& arms,
                                double tol = 1e-2, int max_iter = 100000);

// Lifts a node-level design to the K^2 edge-arm grid: weight of pair
// (a, b) = mu_a * mu_b, laid out at index a*K + b.
DesignDistribution product_distribution(const DesignDistribution& mu);

// Smallest eigenvalue of the uniform second-moment matrix
// (1/N) sum_k x_k x_k^T.
double min_second_moment_eigenvalue(const std::vector<Eigen::VectorXd>& arms);

std::string design_report_to_json(const DesignReport& report);

}  // namespace gbb
