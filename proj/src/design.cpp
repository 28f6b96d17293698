#include "gbb/design.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <nlohmann/json.hpp>

namespace gbb {

namespace {

void check_arms(const std::vector<Eigen::VectorXd>& arms) {
  if (arms.empty()) throw std::invalid_argument("empty arm list");
  for (const auto& x : arms)
    if (x.size() != arms.front().size())
      throw std::invalid_argument("arms must share a dimension");
}

// Leverages x_k^T A^{-1} x_k for all arms from a Cholesky factor of A.
Eigen::VectorXd leverages(const std::vector<Eigen::VectorXd>& arms,
                          const Eigen::LLT<Eigen::MatrixXd>& llt) {
  Eigen::VectorXd lev(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    Eigen::VectorXd half = llt.matrixL().solve(arms[k]);
    lev[static_cast<int>(k)] = half.squaredNorm();
  }
  return lev;
}

}  // namespace

DesignDistribution::DesignDistribution(Eigen::VectorXd weights,
                                       double support_threshold)
    : weights_(std::move(weights)), support_threshold_(support_threshold) {
  if (weights_.size() == 0) throw std::invalid_argument("empty design");
  if (weights_.minCoeff() < -1e-12)
    throw std::invalid_argument("design weights must be nonnegative");
  if (std::abs(weights_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("design weights must sum to one");
  // Clamp float dust so downstream code can rely on w >= 0 exactly.
  for (Eigen::Index k = 0; k < weights_.size(); ++k)
    if (weights_[k] < 0.0) weights_[k] = 0.0;
}

std::vector<int> DesignDistribution::support() const {
  std::vector<int> idx;
  for (int k = 0; k < size(); ++k)
    if (weights_[k] > support_threshold_) idx.push_back(k);
  return idx;
}

DesignDistribution DesignDistribution::uniform(int k) {
  if (k < 1) throw std::invalid_argument("uniform design needs k >= 1");
  return DesignDistribution(Eigen::VectorXd::Constant(k, 1.0 / k));
}

DesignDistribution DesignDistribution::point_mass(int k, int at) {
  if (at < 0 || at >= k) throw std::invalid_argument("point mass out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  w[at] = 1.0;
  return DesignDistribution(std::move(w));
}

Eigen::MatrixXd design_covariance(const std::vector<Eigen::VectorXd>& arms,
                                  const DesignDistribution& dist) {
  check_arms(arms);
  if (dist.size() != static_cast<int>(arms.size()))
    throw std::invalid_argument("design size != arm count");
  const auto p = arms.front().size();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
  for (int k = 0; k < dist.size(); ++k) {
    const double w = dist.weight(k);
    if (w > 0.0) sigma.selfadjointView<Eigen::Lower>().rankUpdate(arms[k], w);
  }
  return sigma.selfadjointView<Eigen::Lower>();
}

double max_leverage(const std::vector<Eigen::VectorXd>& arms,
                    const DesignDistribution& dist) {
  const Eigen::MatrixXd sigma = design_covariance(arms, dist);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    return std::numeric_limits<double>::infinity();
  return leverages(arms, llt).maxCoeff();
}

double max_leverage(const std::vector<Eigen::VectorXd>& arms,
                    const Eigen::MatrixXd& gram) {
  check_arms(arms);
  if (gram.rows() != gram.cols() || gram.rows() != arms.front().size())
    throw std::invalid_argument("gram matrix dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gram matrix is not positive definite");
  return leverages(arms, llt).maxCoeff();
}

DesignReport frank_wolfe_design(const std::vector<Eigen::VectorXd>& arms,
                                double tol, int max_iter) {
  check_arms(arms);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int K = static_cast<int>(arms.size());
  const double p = static_cast<double>(arms.front().size());

  Eigen::VectorXd mu = Eigen::VectorXd::Constant(K, 1.0 / K);
  bool jittered = false;
  // Stop a hair inside the contractual certificate so squared (product)
  // designs inherit a 2*tol slack without the tol^2 overshoot.
  const double threshold = p * (1.0 + 0.98 * tol);

  double objective = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    Eigen::MatrixXd sigma =
        design_covariance(arms, DesignDistribution(mu, 0.0));
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
      const double jitter = 1e-10 * sigma.trace() / p;
      sigma.diagonal().array() += jitter;
      llt.compute(sigma);
      jittered = true;
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument(
            "frank_wolfe_design: arm set does not span its space");
    }

    const Eigen::VectorXd lev = leverages(arms, llt);
    int worst = 0;
    lev.maxCoeff(&worst);  // ties resolve to the lowest index
    objective = lev[worst];

    if (objective <= threshold) {
      DesignReport report{DesignDistribution(mu), objective, iter,
                          objective - p, jittered};
      return report;
    }

    double gamma;
    if (objective > p) {
      gamma = (objective / p - 1.0) / (objective - 1.0);
    } else {
      gamma = 2.0 / (iter + 2.0);
    }
    mu *= (1.0 - gamma);
    mu[worst] += gamma;
    // Renormalize the float dust so the simplex invariant survives many
    // iterations.
    mu /= mu.sum();
  }

  DesignReport last{DesignDistribution(mu), objective, iter, objective - p,
                    jittered};
  throw DesignConvergenceError(
      "frank_wolfe_design: no certificate after " + std::to_string(max_iter) +
          " iterations (objective " + std::to_string(objective) + ")",
      std::move(last));
}

DesignDistribution product_distribution(const DesignDistribution& mu) {
  const int K = mu.size();
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(K) * K);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b)
      lambda[static_cast<Eigen::Index>(a) * K + b] = mu.weight(a) * mu.weight(b);
  // Products of simplex weights can drift a few ulps off 1.
  lambda /= lambda.sum();
  return DesignDistribution(std::move(lambda), mu.support_threshold());
}

double min_second_moment_eigenvalue(const std::vector<Eigen::VectorXd>& arms) {
  check_arms(arms);
  const auto p = arms.front().size();
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(p, p);
  for (const auto& x : arms)
    second.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / arms.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      Eigen::MatrixXd(second.selfadjointView<Eigen::Lower>()),
      Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

std::string design_report_to_json(const DesignReport& report) {
  nlohmann::json j;
  j["weights"] = std::vector<double>(
      report.distribution.weights().data(),
      report.distribution.weights().data() + report.distribution.size());
  j["objective"] = report.objective;
  j["iterations"] = report.iterations;
  j["certificate_gap"] = report.certificate_gap;
  j["jittered"] = report.jittered;
  j["support"] = report.distribution.support();
  return j.dump(2);
}

}  // namespace gbb
