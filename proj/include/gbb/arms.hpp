#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gbb {

// Finite node-arm set in R^d. Must span R^d and hold at least d arms.
class NodeArmSet {
 public:
  NodeArmSet(int dim, std::vector<Eigen::VectorXd> arms);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(arms_.size()); }
  const Eigen::VectorXd& arm(int k) const { return arms_[k]; }
  const std::vector<Eigen::VectorXd>& arms() const { return arms_; }

 private:
  int dim_;
  std::vector<Eigen::VectorXd> arms_;
};

// Column-major stacking of the outer product x x'^T:
// result[j*d + i] = x[i] * x'[j].
Eigen::VectorXd lift(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime);

struct EdgeArm {
  Eigen::VectorXd vector;  // lift(base.arm(left), base.arm(right))
  int left_index;
  int right_index;
};

// All K^2 lifted pairs of a node-arm set, index (a, b) -> a*K + b.
class EdgeArmSet {
 public:
  explicit EdgeArmSet(NodeArmSet base);

  const NodeArmSet& base() const { return base_; }
  int size() const { return static_cast<int>(vectors_.size()); }
  int dim() const { return base_.dim() * base_.dim(); }
  int index(int a, int b) const { return a * base_.size() + b; }
  int left_index(int z) const { return z / base_.size(); }
  int right_index(int z) const { return z % base_.size(); }
  const Eigen::VectorXd& vector(int z) const { return vectors_[z]; }
  const std::vector<Eigen::VectorXd>& vectors() const { return vectors_; }
  EdgeArm at(int z) const { return {vectors_[z], left_index(z), right_index(z)}; }

  // max_z ||z||^2 over the set.
  double max_squared_norm() const { return max_squared_norm_; }

 private:
  NodeArmSet base_;
  std::vector<Eigen::VectorXd> vectors_;
  double max_squared_norm_;
};

// Canonical basis e_1..e_d plus the rotated arm (cos w, sin w, 0, ..., 0).
// Requires d >= 2 and 0 < w <= pi/2.
NodeArmSet soare_arm_set(int d, double omega);

// K iid standard-Gaussian vectors normalized to unit length; identical
// output for identical seeds. Rejects K < d.
NodeArmSet random_unit_arms(int K, int d, std::uint64_t seed);

// CSV import: one row per arm, d comma-separated columns.
NodeArmSet read_arms_csv(std::istream& in);
NodeArmSet read_arms_csv_file(const std::string& path);

}  // namespace gbb
