#include <doctest.h>

#include <nlohmann/json.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "gbb/arms.hpp"
#include "gbb/design.hpp"
#include "test_helpers.hpp"

using namespace gbb;
using test::basis_vector;

namespace {

std::vector<Eigen::VectorXd> canonical_basis(int d) {
  std::vector<Eigen::VectorXd> arms;
  for (int i = 0; i < d; ++i) arms.push_back(basis_vector(d, i));
  return arms;
}

// Exhaustive simplex scan for three arms in the plane; leverage through the
// closed-form 2x2 inverse. Resolution 1e-3.
double grid_search_objective(const std::vector<Eigen::VectorXd>& arms) {
  REQUIRE(arms.size() == 3);
  REQUIRE(arms.front().size() == 2);
  double best = std::numeric_limits<double>::infinity();
  const int steps = 1000;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps - a; ++b) {
      const double w0 = a / double(steps);
      const double w1 = b / double(steps);
      const double w2 = 1.0 - w0 - w1;
      double s00 = 0, s01 = 0, s11 = 0;
      const double w[3] = {w0, w1, w2};
      for (int k = 0; k < 3; ++k) {
        s00 += w[k] * arms[k][0] * arms[k][0];
        s01 += w[k] * arms[k][0] * arms[k][1];
        s11 += w[k] * arms[k][1] * arms[k][1];
      }
      const double det = s00 * s11 - s01 * s01;
      if (det <= 1e-15) continue;
      double worst = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double x0 = arms[k][0], x1 = arms[k][1];
        const double lev =
            (x0 * (s11 * x0 - s01 * x1) + x1 * (s00 * x1 - s01 * x0)) / det;
        worst = std::max(worst, lev);
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("design") {

TEST_CASE("design distributions live on the simplex") {
  Eigen::VectorXd bad_sum(2);
  bad_sum << 0.5, 0.6;
  CHECK_THROWS_AS(DesignDistribution{bad_sum}, std::invalid_argument);
  Eigen::VectorXd negative(2);
  negative << 1.2, -0.2;
  CHECK_THROWS_AS(DesignDistribution{negative}, std::invalid_argument);

  const DesignDistribution uniform = DesignDistribution::uniform(4);
  CHECK(uniform.weights().sum() == doctest::Approx(1.0));
  const DesignDistribution point = DesignDistribution::point_mass(4, 2);
  CHECK(point.weight(2) == 1.0);
  CHECK(point.support() == std::vector<int>{2});
}

TEST_CASE("max leverage of the uniform design on the basis") {
  const auto arms = canonical_basis(2);
  CHECK(max_leverage(arms, DesignDistribution::uniform(2)) ==
        doctest::Approx(2.0));
}

TEST_CASE("unspanned directions make the leverage infinite") {
  const auto arms = canonical_basis(2);
  // All the weight on the first axis leaves the second unspanned.
  CHECK(max_leverage(arms, DesignDistribution::point_mass(2, 0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("covariance matches the naive double loop") {
  Rng rng = make_rng(31);
  const int d = 3, K = 7;
  std::vector<Eigen::VectorXd> arms;
  for (int k = 0; k < K; ++k) arms.push_back(test::random_vector(d, rng));
  const DesignDistribution dist = test::random_design(K, rng);

  Eigen::MatrixXd naive = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        naive(i, j) += dist.weight(k) * arms[k][i] * arms[k][j];

  CHECK((design_covariance(arms, dist) - naive).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("covariance of a point mass is the outer product") {
  const auto arms = canonical_basis(3);
  const Eigen::MatrixXd cov =
      design_covariance(arms, DesignDistribution::point_mass(3, 1));
  CHECK((cov - arms[1] * arms[1].transpose()).norm() == doctest::Approx(0.0));

  const Eigen::MatrixXd uniform_cov =
      design_covariance(arms, DesignDistribution::uniform(3));
  CHECK((uniform_cov - Eigen::MatrixXd::Identity(3, 3) / 3.0).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("frank-wolfe on the canonical basis returns the uniform design") {
  for (int d = 2; d <= 5; ++d) {
    const DesignReport report = frank_wolfe_design(canonical_basis(d));
    CHECK(report.objective == doctest::Approx(double(d)));
    for (int k = 0; k < d; ++k)
      CHECK(report.distribution.weight(k) == doctest::Approx(1.0 / d));
  }
}

TEST_CASE("frank-wolfe certificate on rotated-basis sets") {
  const double tol = 1e-2;
  for (double omega : {0.1, 0.5, 1.5707}) {
    for (int d = 2; d <= 5; ++d) {
      const NodeArmSet arms = soare_arm_set(d, omega);
      const DesignReport report = frank_wolfe_design(arms.arms(), tol);
      CHECK(report.objective >= double(d) - 1e-9);
      CHECK(report.objective <= double(d) * (1.0 + tol));
      CHECK(report.certificate_gap ==
            doctest::Approx(report.objective - d).epsilon(1e-12));
    }
  }
}

TEST_CASE("frank-wolfe certificate on random unit arms") {
  const double tol = 1e-2;
  const NodeArmSet arms = random_unit_arms(30, 3, 5);
  const DesignReport report = frank_wolfe_design(arms.arms(), tol);
  CHECK(report.objective >= 3.0 - 1e-9);
  CHECK(report.objective <= 3.0 * (1.0 + tol));
  // Iterates never leave the simplex.
  CHECK(report.distribution.weights().minCoeff() >= 0.0);
  CHECK(report.distribution.weights().sum() == doctest::Approx(1.0));
}

TEST_CASE("frank-wolfe agrees with the dense grid oracle") {
  const NodeArmSet arms = random_unit_arms(3, 2, 17);
  const double tol = 1e-2;
  const DesignReport report = frank_wolfe_design(arms.arms(), tol);
  const double grid = grid_search_objective(arms.arms());
  CHECK(grid >= 2.0 - 1e-9);
  CHECK(report.objective <= grid + 2.0 * tol + 1e-6);
  CHECK(report.objective >= grid - 0.05);  // grid min sits above the optimum
}

TEST_CASE("frank-wolfe is deterministic") {
  const NodeArmSet arms = random_unit_arms(12, 3, 23);
  const DesignReport a = frank_wolfe_design(arms.arms());
  const DesignReport b = frank_wolfe_design(arms.arms());
  CHECK((a.distribution.weights() - b.distribution.weights()).norm() == 0.0);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("exhausted budget raises and carries the last iterate") {
  const NodeArmSet arms = random_unit_arms(20, 4, 29);
  try {
    frank_wolfe_design(arms.arms(), 1e-4, 1);
    FAIL("expected DesignConvergenceError");
  } catch (const DesignConvergenceError& e) {
    CHECK(e.report.iterations == 1);
    CHECK(e.report.objective > 4.0);
    CHECK(e.report.distribution.size() == 20);
  }
}

TEST_CASE("product distribution basics") {
  const DesignDistribution point =
      product_distribution(DesignDistribution::point_mass(3, 0));
  CHECK(point.weight(0) == 1.0);
  CHECK(point.weights().tail(8).cwiseAbs().maxCoeff() == 0.0);

  const DesignDistribution uniform =
      product_distribution(DesignDistribution::uniform(3));
  for (int z = 0; z < 9; ++z)
    CHECK(uniform.weight(z) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("marginals of the product design recover the node design") {
  Rng rng = make_rng(37);
  const DesignDistribution mu = test::random_design(6, rng);
  const DesignDistribution lambda = product_distribution(mu);
  for (int a = 0; a < 6; ++a) {
    double left = 0.0, right = 0.0;
    for (int b = 0; b < 6; ++b) {
      left += lambda.weight(a * 6 + b);
      right += lambda.weight(b * 6 + a);
    }
    CHECK(std::abs(left - mu.weight(a)) <= 1e-15);
    CHECK(std::abs(right - mu.weight(a)) <= 1e-15);
  }
}

TEST_CASE("product of the node optimum is edge-arm optimal") {
  const double tol = 1e-2;
  const NodeArmSet arms = soare_arm_set(3, 0.1);
  const DesignReport mu_report = frank_wolfe_design(arms.arms(), tol);
  const EdgeArmSet edges{arms};
  const double h_lifted =
      max_leverage(edges.vectors(), product_distribution(mu_report.distribution));
  CHECK(h_lifted >= 9.0 - 1e-8);
  CHECK(h_lifted <= 9.0 * (1.0 + 2.0 * tol));
}

TEST_CASE("midpoint convexity of the design objective") {
  Rng rng = make_rng(41);
  const int d = 3, K = 8;
  std::vector<Eigen::VectorXd> arms;
  for (int k = 0; k < K; ++k) arms.push_back(test::random_vector(d, rng));
  for (int trial = 0; trial < 100; ++trial) {
    const DesignDistribution a = test::random_design(K, rng);
    const DesignDistribution b = test::random_design(K, rng);
    const double ha = max_leverage(arms, a);
    const double hb = max_leverage(arms, b);
    const DesignDistribution mid((a.weights() + b.weights()) / 2.0);
    CHECK(max_leverage(arms, mid) <= 0.5 * (ha + hb) + 1e-9);
  }
}

TEST_CASE("smallest second-moment eigenvalue") {
  const auto basis4 = canonical_basis(4);
  CHECK(min_second_moment_eigenvalue(basis4) == doctest::Approx(0.25));

  // Eigen-decomposition oracle on a random set.
  Rng rng = make_rng(43);
  std::vector<Eigen::VectorXd> arms;
  for (int k = 0; k < 9; ++k) arms.push_back(test::random_vector(3, rng));
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(3, 3);
  for (const auto& x : arms) second += x * x.transpose() / 9.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(second);
  CHECK(min_second_moment_eigenvalue(arms) ==
        doctest::Approx(eig.eigenvalues().minCoeff()).epsilon(1e-10));

  // Rank-deficient list.
  std::vector<Eigen::VectorXd> flat{basis_vector(2, 0), basis_vector(2, 0)};
  CHECK(min_second_moment_eigenvalue(flat) == doctest::Approx(0.0));

  // Quadratic homogeneity.
  std::vector<Eigen::VectorXd> scaled;
  for (const auto& x : arms) scaled.push_back(3.0 * x);
  CHECK(min_second_moment_eigenvalue(scaled) ==
        doctest::Approx(9.0 * min_second_moment_eigenvalue(arms)));
}

TEST_CASE("max leverage under an explicit gram matrix") {
  const EdgeArmSet edges{soare_arm_set(2, 0.8)};
  double max_norm2 = 0.0;
  for (const auto& z : edges.vectors())
    max_norm2 = std::max(max_norm2, z.squaredNorm());
  CHECK(max_leverage(edges.vectors(),
                     Eigen::MatrixXd::Identity(edges.dim(), edges.dim())) ==
        doctest::Approx(max_norm2));

  // Explicit-inverse oracle on a random positive definite matrix.
  Rng rng = make_rng(47);
  const Eigen::MatrixXd a = test::random_spd(edges.dim(), rng);
  const Eigen::MatrixXd inv = a.inverse();
  double want = 0.0;
  for (const auto& z : edges.vectors())
    want = std::max(want, double(z.dot(inv * z)));
  CHECK(max_leverage(edges.vectors(), a) ==
        doctest::Approx(want).epsilon(1e-10));

  CHECK_THROWS_AS(
      max_leverage(edges.vectors(),
                   Eigen::MatrixXd::Zero(edges.dim(), edges.dim())),
      std::invalid_argument);
}

TEST_CASE("scaled optimal-design gram attains the dimension bound") {
  // Canonical-basis node arms make the uniform product design exactly
  // optimal, so the leverage of m*t times its covariance is d^2/(m*t).
  const EdgeArmSet edges{NodeArmSet(2, canonical_basis(2))};
  const DesignDistribution lambda =
      product_distribution(DesignDistribution::uniform(2));
  const double mt = 40.0;
  const Eigen::MatrixXd gram = mt * design_covariance(edges.vectors(), lambda);
  CHECK(max_leverage(edges.vectors(), gram) == doctest::Approx(4.0 / mt));
}

TEST_CASE("design report serializes to json") {
  const DesignReport report = frank_wolfe_design(canonical_basis(3));
  const auto j = nlohmann::json::parse(design_report_to_json(report));
  CHECK(j["objective"].get<double>() == doctest::Approx(3.0));
  CHECK(j["iterations"].get<int>() == report.iterations);
  CHECK(j["weights"].size() == 3);
  CHECK(j["jittered"].get<bool>() == false);
}

}  // TEST_SUITE
