#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gbb/arms.hpp"
#include "gbb/design.hpp"
#include "gbb/graph.hpp"
#include "gbb/rng.hpp"

namespace gbb {

// One round's design-matrix increment: draw a node-arm per node iid from mu,
// sum the edge-arm outer products over every directed edge.
Eigen::MatrixXd sample_round_matrix(const Graph& graph, const NodeArmSet& arms,
                                    const DesignDistribution& mu, Rng& rng);

struct VarianceEstimate {
  GraphKind kind;
  int m = 0;
  int n_samples = 0;
  double spectral_norm = 0.0;  // || E[(A1 - EA1)^2] || estimate
  double std_error = 0.0;      // bootstrap deviation; 0 when not resampled
};

// Two-pass Monte-Carlo estimate of the spectral norm of the round matrix's
// variance. bootstrap_resamples > 0 adds a resampled std error.
VarianceEstimate variance_norm(const Graph& graph, const NodeArmSet& arms,
                               const DesignDistribution& mu, int n_samples,
                               std::uint64_t seed, int bootstrap_resamples = 0);

// Builds the graph of the requested family with exactly m directed edges;
// throws when m is not realizable by the family.
Graph graph_with_edge_count(GraphKind kind, int m);

// Least-squares slope of log ||Var(A1)|| against log m over the given m grid.
// Arms are K random unit vectors in R^d; node-arms are sampled from their
// G-optimal design.
double scaling_slope(GraphKind kind, const std::vector<int>& m_values, int d,
                     int K, int n_samples, std::uint64_t seed);

// Per-edge variance/covariance ceilings: edge_variance bounds a single
// edge's Var, source_covariance the covariance of edges sharing their source
// node, chained_covariance the covariance of edges chained head-to-tail
// (including reversed pairs).
struct VarianceBoundSpec {
  double edge_variance = 0.0;      // P
  double source_covariance = 0.0;  // M
  double chained_covariance = 0.0; // N
};

// Closed-form variance bound for the family at m edges:
//   star:     mP + (n-1)(n-2) M + n(n-1) N,      n = m/2 + 1
//   complete: mP + n(n-1)(n-2) M + n(n-1)^2 N,   n = (1+sqrt(4m+1))/2
//   circle:   mP + 2n M + 4n N,                  n = m/2
//   matching: mP + m N
double table1_bound(GraphKind kind, int m, const VarianceBoundSpec& spec);

// Monte-Carlo estimates of the ceilings on minimal gadget graphs (a single
// edge for P, a 3-node path for M and N).
VarianceBoundSpec estimate_bound_constants(const NodeArmSet& arms,
                                           const DesignDistribution& mu,
                                           int n_samples, std::uint64_t seed);

// Spectral norm of a symmetric PSD matrix by power iteration.
double power_iteration_norm(const Eigen::MatrixXd& matrix,
                            double rel_tol = 1e-8, int max_iter = 100000);

// Operator 2-norm of a general square matrix (power iteration on A^T A).
double operator_norm(const Eigen::MatrixXd& matrix, double rel_tol = 1e-8,
                     int max_iter = 100000);

// CSV: kind, m, n_samples, norm, std_error.
void write_variance_csv(std::ostream& out,
                        const std::vector<VarianceEstimate>& estimates);

}  // namespace gbb
