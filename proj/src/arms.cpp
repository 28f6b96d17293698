#include "gbb/arms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "detail/csv.hpp"
#include "gbb/rng.hpp"

namespace gbb {

NodeArmSet::NodeArmSet(int dim, std::vector<Eigen::VectorXd> arms)
    : dim_(dim), arms_(std::move(arms)) {
  if (dim_ < 1) throw std::invalid_argument("arm dimension must be positive");
  if (static_cast<int>(arms_.size()) < dim_)
    throw std::invalid_argument("need at least d arms to span R^d");
  Eigen::MatrixXd stacked(arms_.size(), dim_);
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    if (arms_[k].size() != dim_)
      throw std::invalid_argument("arm dimension mismatch");
    stacked.row(k) = arms_[k].transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  if (qr.rank() < dim_)
    throw std::invalid_argument("arm set does not span R^d");
}

Eigen::VectorXd lift(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime) {
  if (x.size() != x_prime.size())
    throw std::invalid_argument("lift: vectors must share a dimension");
  const auto d = x.size();
  Eigen::VectorXd z(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) z[j * d + i] = x[i] * x_prime[j];
  return z;
}

EdgeArmSet::EdgeArmSet(NodeArmSet base) : base_(std::move(base)) {
  const int K = base_.size();
  vectors_.reserve(static_cast<std::size_t>(K) * K);
  max_squared_norm_ = 0.0;
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      vectors_.push_back(lift(base_.arm(a), base_.arm(b)));
      max_squared_norm_ = std::max(max_squared_norm_, vectors_.back().squaredNorm());
    }
  }
}

NodeArmSet soare_arm_set(int d, double omega) {
  if (d < 2) throw std::invalid_argument("soare arm set needs d >= 2");
  if (!(omega > 0.0) || omega > std::acos(-1.0) / 2.0)
    throw std::domain_error("omega must lie in (0, pi/2]");
  std::vector<Eigen::VectorXd> arms;
  arms.reserve(d + 1);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[i] = 1.0;
    arms.push_back(std::move(e));
  }
  Eigen::VectorXd rotated = Eigen::VectorXd::Zero(d);
  rotated[0] = std::cos(omega);
  rotated[1] = std::sin(omega);
  arms.push_back(std::move(rotated));
  return NodeArmSet(d, std::move(arms));
}

NodeArmSet random_unit_arms(int K, int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("arm dimension must be positive");
  if (K < d)
    throw std::invalid_argument("K < d would risk a rank-deficient arm set");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> arms;
  arms.reserve(K);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x[i] = gauss(rng);
    x.normalize();
    arms.push_back(std::move(x));
  }
  return NodeArmSet(d, std::move(arms));
}

NodeArmSet read_arms_csv(std::istream& in) {
  const auto rows = detail::read_numeric_csv(in);
  if (rows.empty()) throw std::invalid_argument("arm csv: no rows");
  const int d = static_cast<int>(rows.front().size());
  std::vector<Eigen::VectorXd> arms;
  arms.reserve(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("arm csv: ragged rows");
    arms.push_back(Eigen::Map<const Eigen::VectorXd>(row.data(), d));
  }
  return NodeArmSet(d, std::move(arms));
}

NodeArmSet read_arms_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open arm csv: " + path);
  return read_arms_csv(in);
}

}  // namespace gbb
