#include "gbb/allocation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gbb {

BestPair best_edge_arm(const Eigen::MatrixXd& m_estimate,
                       const NodeArmSet& arms) {
  if (m_estimate.rows() != arms.dim() || m_estimate.cols() != arms.dim())
    throw std::invalid_argument("best_edge_arm: dimension mismatch");
  BestPair best{0, 0, arms.arm(0).dot(m_estimate * arms.arm(0))};
  for (int a = 0; a < arms.size(); ++a) {
    const Eigen::VectorXd mx = m_estimate.transpose() * arms.arm(a);
    for (int b = 0; b < arms.size(); ++b) {
      const double value = mx.dot(arms.arm(b));
      if (value > best.value) best = {a, b, value};
    }
  }
  return best;
}

Allocation bipartite_allocation(const Graph& graph, const NodeArmSet& arms,
                                const Eigen::MatrixXd& m_estimate) {
  Allocation out;
  out.star_pair = best_edge_arm(m_estimate, arms);
  out.operation_count =
      static_cast<long>(arms.size()) * arms.size();  // pair scan

  const int n = graph.n_nodes();
  out.arm_index.assign(n, -1);
  out.part.assign(n, 0);

  // Crossing counts maintained incrementally: when a node settles into a
  // part, it notifies its still-unassigned neighbors.
  std::vector<int> in_part1(n, 0), in_part2(n, 0);
  for (int i = 0; i < n; ++i) {
    out.operation_count += 1;
    const int n1 = in_part1[i];
    const int n2 = in_part2[i];
    int part;
    if (n1 > n2) {
      out.arm_index[i] = out.star_pair.right;
      part = 2;
    } else {
      out.arm_index[i] = out.star_pair.left;
      part = 1;
    }
    out.part[i] = part;
    for (int j : graph.neighbors(i)) {
      if (out.arm_index[j] >= 0) continue;
      out.operation_count += 1;
      (part == 1 ? in_part1 : in_part2)[j] += 1;
    }
  }
  return out;
}

ExtremeAllocations brute_force_extremes(const Graph& graph,
                                        const NodeArmSet& arms,
                                        const BilinearParameter& param,
                                        long max_enumerations) {
  const int n = graph.n_nodes();
  const int K = arms.size();
  double combinations = 1.0;
  for (int i = 0; i < n; ++i) combinations *= K;
  if (combinations > static_cast<double>(max_enumerations))
    throw std::invalid_argument("brute_force_extremes: K^n exceeds the guard");

  // Pair rewards tabulated once; each assignment is then m table lookups.
  Eigen::MatrixXd pair_reward(K, K);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b)
      pair_reward(a, b) = expected_reward(arms.arm(a), arms.arm(b), param);

  ExtremeAllocations out;
  std::vector<int> assignment(n, 0);
  bool first = true;
  while (true) {
    double reward = 0.0;
    for (const auto& [i, j] : graph.edges())
      reward += pair_reward(assignment[i], assignment[j]);
    if (first || reward > out.best_reward) {
      out.best = assignment;
      out.best_reward = reward;
    }
    if (first || reward < out.worst_reward) {
      out.worst = assignment;
      out.worst_reward = reward;
    }
    first = false;

    int pos = n - 1;
    while (pos >= 0 && assignment[pos] == K - 1) assignment[pos--] = 0;
    if (pos < 0) break;
    assignment[pos] += 1;
  }
  return out;
}

double differential_ratio(double reward, double best, double worst) {
  if (best < worst)
    throw std::invalid_argument("differential_ratio: best < worst");
  if (best == worst) return 1.0;
  return (reward - worst) / (best - worst);
}

RewardSummary evaluate_allocation(const Graph& graph, const NodeArmSet& arms,
                                  const BilinearParameter& param,
                                  const Allocation& allocation,
                                  long max_enumerations) {
  RewardSummary summary;
  summary.reward = global_reward(allocation.arm_index, graph, arms, param);
  const ExtremeAllocations extremes =
      brute_force_extremes(graph, arms, param, max_enumerations);
  summary.best = extremes.best_reward;
  summary.worst = extremes.worst_reward;
  summary.ratio = differential_ratio(summary.reward, summary.best, summary.worst);
  return summary;
}

void write_allocation_csv(std::ostream& out, const Allocation& allocation) {
  out << "node,part,arm\n";
  for (std::size_t i = 0; i < allocation.arm_index.size(); ++i)
    out << i << ',' << allocation.part[i] << ',' << allocation.arm_index[i]
        << '\n';
}

}  // namespace gbb
