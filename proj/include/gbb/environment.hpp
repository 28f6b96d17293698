#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

#include "gbb/arms.hpp"
#include "gbb/graph.hpp"
#include "gbb/rng.hpp"

namespace gbb {

// Unknown interaction matrix of the bilinear reward, with its column-major
// vectorization cached. theta()[j*d+i] == matrix()(i, j).
class BilinearParameter {
 public:
  explicit BilinearParameter(Eigen::MatrixXd matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& theta() const { return theta_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd theta_;
};

struct NoiseModel {
  enum class Kind { gaussian };

  double sigma = 1.0;
  Kind kind = Kind::gaussian;

  double sample(Rng& rng) const;
};

// x^T M x'
double expected_reward(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                       const BilinearParameter& param);

double sample_reward(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                     const BilinearParameter& param, const NoiseModel& noise,
                     Rng& rng);

// Sum of expected rewards over every directed edge for one joint assignment
// (one arm index per node).
double global_reward(const std::vector<int>& assignment, const Graph& graph,
                     const NodeArmSet& arms, const BilinearParameter& param);

// M + M^T; turns an asymmetric interaction matrix into the symmetric one that
// yields the same global reward on a symmetric graph.
BilinearParameter symmetrize(const Eigen::MatrixXd& m);

// Block matrix [[M, beta], [0, 0]] in dimension d+1; paired with arms
// extended by a constant-1 coordinate it realizes reward x^T M x' + x^T beta.
BilinearParameter augment(const Eigen::MatrixXd& m, const Eigen::VectorXd& beta);

// The arm lifting that goes with augment(): x -> (x, 1).
NodeArmSet augment_arms(const NodeArmSet& arms);

// Entry (0, 0) equal to 2, all else 0.
BilinearParameter soare_parameter(int d);

// CSV import: d rows by d columns for a matrix, a single row for a vector.
Eigen::MatrixXd read_matrix_csv(std::istream& in);
Eigen::MatrixXd read_matrix_csv_file(const std::string& path);
Eigen::VectorXd read_vector_csv(std::istream& in);
Eigen::VectorXd read_vector_csv_file(const std::string& path);

}  // namespace gbb
