#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <utility>
#include <vector>

#include "gbb/arms.hpp"
#include "gbb/environment.hpp"
#include "gbb/graph.hpp"

namespace gbb {

struct BestPair {
  int left = 0;
  int right = 0;
  double value = 0.0;
};

// Exhaustive argmax of x^T M x' over all K^2 ordered arm pairs; ties go to
// the lexicographically smallest pair.
BestPair best_edge_arm(const Eigen::MatrixXd& m_estimate,
                       const NodeArmSet& arms);

struct Allocation {
  std::vector<int> arm_index;  // node -> node-arm index
  std::vector<int> part;       // node -> 1 or 2
  BestPair star_pair;
  // Elementary steps taken (pair scans + node visits + neighbor updates);
  // grows as K^2 + n + m.
  long operation_count = 0;
};

// Greedy two-coloring: nodes in ascending index; a node joins the side that
// crosses more of its already-placed neighbors, carrying that side's arm of
// the best pair. Ties (and isolated starts) take the left arm / part 1.
Allocation bipartite_allocation(const Graph& graph, const NodeArmSet& arms,
                                const Eigen::MatrixXd& m_estimate);

struct ExtremeAllocations {
  std::vector<int> best;
  double best_reward = 0.0;
  std::vector<int> worst;
  double worst_reward = 0.0;
};

// Exhaustive scan of all K^n joint assignments. Guarded: throws when K^n
// exceeds max_enumerations.
ExtremeAllocations brute_force_extremes(const Graph& graph,
                                        const NodeArmSet& arms,
                                        const BilinearParameter& param,
                                        long max_enumerations = 10'000'000);

// (r - r_min) / (r_best - r_min); defined as 1 when the range is empty.
double differential_ratio(double reward, double best, double worst);

struct RewardSummary {
  double reward = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double ratio = 0.0;
};

// Convenience wrapper: reward of the given allocation plus brute-force
// extremes (subject to the enumeration guard).
RewardSummary evaluate_allocation(const Graph& graph, const NodeArmSet& arms,
                                  const BilinearParameter& param,
                                  const Allocation& allocation,
                                  long max_enumerations = 10'000'000);

// CSV: node, part, arm.
void write_allocation_csv(std::ostream& out, const Allocation& allocation);

}  // namespace gbb
