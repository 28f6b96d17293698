#include "gbb/environment.hpp"

#include <fstream>
#include <stdexcept>

#include "detail/csv.hpp"

namespace gbb {

BilinearParameter::BilinearParameter(Eigen::MatrixXd matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("parameter matrix must be square");
  theta_ = Eigen::Map<const Eigen::VectorXd>(matrix_.data(), matrix_.size());
}

double NoiseModel::sample(Rng& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return sigma * gauss(rng);
}

double expected_reward(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                       const BilinearParameter& param) {
  if (x.size() != param.dim() || x_prime.size() != param.dim())
    throw std::invalid_argument("expected_reward: dimension mismatch");
  return x.dot(param.matrix() * x_prime);
}

double sample_reward(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                     const BilinearParameter& param, const NoiseModel& noise,
                     Rng& rng) {
  return expected_reward(x, x_prime, param) + noise.sample(rng);
}

double global_reward(const std::vector<int>& assignment, const Graph& graph,
                     const NodeArmSet& arms, const BilinearParameter& param) {
  if (static_cast<int>(assignment.size()) != graph.n_nodes())
    throw std::invalid_argument("global_reward: assignment length != n_nodes");
  for (int a : assignment)
    if (a < 0 || a >= arms.size())
      throw std::out_of_range("global_reward: arm index out of range");
  double total = 0.0;
  for (const auto& [i, j] : graph.edges())
    total += expected_reward(arms.arm(assignment[i]), arms.arm(assignment[j]), param);
  return total;
}

BilinearParameter symmetrize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("symmetrize: matrix must be square");
  return BilinearParameter(m + m.transpose());
}

BilinearParameter augment(const Eigen::MatrixXd& m, const Eigen::VectorXd& beta) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("augment: matrix must be square");
  if (beta.size() != m.rows())
    throw std::invalid_argument("augment: beta dimension mismatch");
  const auto d = m.rows();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d + 1, d + 1);
  block.topLeftCorner(d, d) = m;
  block.topRightCorner(d, 1) = beta;
  return BilinearParameter(std::move(block));
}

NodeArmSet augment_arms(const NodeArmSet& arms) {
  std::vector<Eigen::VectorXd> extended;
  extended.reserve(arms.size());
  for (const auto& x : arms.arms()) {
    Eigen::VectorXd xt(x.size() + 1);
    xt << x, 1.0;
    extended.push_back(std::move(xt));
  }
  return NodeArmSet(arms.dim() + 1, std::move(extended));
}

BilinearParameter soare_parameter(int d) {
  if (d < 2) throw std::invalid_argument("soare parameter needs d >= 2");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  m(0, 0) = 2.0;
  return BilinearParameter(std::move(m));
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  const auto rows = detail::read_numeric_csv(in);
  if (rows.empty()) throw std::invalid_argument("matrix csv: no rows");
  const auto cols = rows.front().size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("matrix csv: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Eigen::MatrixXd read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix csv: " + path);
  return read_matrix_csv(in);
}

Eigen::VectorXd read_vector_csv(std::istream& in) {
  const auto rows = detail::read_numeric_csv(in);
  if (rows.size() != 1)
    throw std::invalid_argument("vector csv: expected exactly one row");
  return Eigen::Map<const Eigen::VectorXd>(rows.front().data(),
                                           rows.front().size());
}

Eigen::VectorXd read_vector_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vector csv: " + path);
  return read_vector_csv(in);
}

}  // namespace gbb
