#include "gbb/variance.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gbb {

namespace {

std::vector<double> weight_vector(const DesignDistribution& mu) {
  return std::vector<double>(mu.weights().data(),
                             mu.weights().data() + mu.size());
}

// Mean of (A_k - mean)(B_k - mean)^T over paired sample lists; with
// samples_b == samples_a this is the Monte-Carlo matrix variance.
Eigen::MatrixXd cross_moment(const std::vector<Eigen::MatrixXd>& samples_a,
                             const std::vector<Eigen::MatrixXd>& samples_b) {
  const auto p = samples_a.front().rows();
  Eigen::MatrixXd mean_a = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd mean_b = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t k = 0; k < samples_a.size(); ++k) {
    mean_a += samples_a[k];
    mean_b += samples_b[k];
  }
  mean_a /= static_cast<double>(samples_a.size());
  mean_b /= static_cast<double>(samples_b.size());

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t k = 0; k < samples_a.size(); ++k)
    acc += (samples_a[k] - mean_a) * (samples_b[k] - mean_b);
  return acc / static_cast<double>(samples_a.size());
}

double least_squares_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

Eigen::MatrixXd sample_round_matrix(const Graph& graph, const NodeArmSet& arms,
                                    const DesignDistribution& mu, Rng& rng) {
  if (mu.size() != arms.size())
    throw std::invalid_argument("sample_round_matrix: design size != arm count");
  const auto cdf = cumulative_weights(weight_vector(mu));
  std::vector<int> draws(graph.n_nodes());
  for (int i = 0; i < graph.n_nodes(); ++i) draws[i] = draw_index(cdf, rng);

  const int p = arms.dim() * arms.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [i, j] : graph.edges()) {
    const Eigen::VectorXd z = lift(arms.arm(draws[i]), arms.arm(draws[j]));
    a.selfadjointView<Eigen::Lower>().rankUpdate(z);
  }
  return a.selfadjointView<Eigen::Lower>();
}

VarianceEstimate variance_norm(const Graph& graph, const NodeArmSet& arms,
                               const DesignDistribution& mu, int n_samples,
                               std::uint64_t seed, int bootstrap_resamples) {
  if (n_samples < 2)
    throw std::invalid_argument("variance_norm needs n_samples >= 2");
  Rng rng = make_rng(seed);
  std::vector<Eigen::MatrixXd> samples;
  samples.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k)
    samples.push_back(sample_round_matrix(graph, arms, mu, rng));

  const Eigen::MatrixXd var = cross_moment(samples, samples);
  VarianceEstimate estimate;
  estimate.kind = graph.kind();
  estimate.m = graph.m();
  estimate.n_samples = n_samples;
  estimate.spectral_norm = power_iteration_norm(var);

  if (bootstrap_resamples > 0) {
    std::vector<double> norms(bootstrap_resamples);
    std::uniform_int_distribution<int> pick(0, n_samples - 1);
    std::vector<Eigen::MatrixXd> resample(n_samples);
    for (int b = 0; b < bootstrap_resamples; ++b) {
      for (int k = 0; k < n_samples; ++k) resample[k] = samples[pick(rng)];
      norms[b] = power_iteration_norm(cross_moment(resample, resample));
    }
    double mean = 0.0;
    for (double v : norms) mean += v;
    mean /= bootstrap_resamples;
    double ss = 0.0;
    for (double v : norms) ss += (v - mean) * (v - mean);
    estimate.std_error = std::sqrt(ss / bootstrap_resamples);
  }
  return estimate;
}

Graph graph_with_edge_count(GraphKind kind, int m) {
  switch (kind) {
    case GraphKind::star:
      if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("star graph needs even m >= 2");
      return make_star(m / 2 + 1);
    case GraphKind::complete: {
      const int n = static_cast<int>(std::lround((1.0 + std::sqrt(4.0 * m + 1.0)) / 2.0));
      if (n < 2 || n * (n - 1) != m)
        throw std::invalid_argument("complete graph needs m = n(n-1)");
      return make_complete(n);
    }
    case GraphKind::circle:
      if (m < 6 || m % 2 != 0)
        throw std::invalid_argument("circle graph needs even m >= 6");
      return make_circle(m / 2);
    case GraphKind::matching:
      if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("matching graph needs even m >= 2");
      return make_matching(m);
    case GraphKind::custom:
      break;
  }
  throw std::invalid_argument("no edge-count rule for custom graphs");
}

double scaling_slope(GraphKind kind, const std::vector<int>& m_values, int d,
                     int K, int n_samples, std::uint64_t seed) {
  if (m_values.size() < 3)
    throw std::invalid_argument("scaling_slope needs >= 3 edge counts");
  const NodeArmSet arms = random_unit_arms(K, d, mix_seed(seed, 0x4a52));
  const DesignReport design = frank_wolfe_design(arms.arms());

  std::vector<double> log_m, log_norm;
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    const Graph graph = graph_with_edge_count(kind, m_values[i]);
    const VarianceEstimate estimate =
        variance_norm(graph, arms, design.distribution, n_samples,
                      mix_seed(seed, static_cast<std::uint64_t>(m_values[i])));
    log_m.push_back(std::log(static_cast<double>(m_values[i])));
    log_norm.push_back(std::log(estimate.spectral_norm));
  }
  return least_squares_slope(log_m, log_norm);
}

double table1_bound(GraphKind kind, int m, const VarianceBoundSpec& spec) {
  const double P = spec.edge_variance;
  const double M = spec.source_covariance;
  const double N = spec.chained_covariance;
  switch (kind) {
    case GraphKind::star: {
      const double n = m / 2.0 + 1.0;
      graph_with_edge_count(kind, m);  // realizability check
      return m * P + (n - 1.0) * (n - 2.0) * M + n * (n - 1.0) * N;
    }
    case GraphKind::complete: {
      const Graph g = graph_with_edge_count(kind, m);
      const double n = g.n_nodes();
      return m * P + n * (n - 1.0) * (n - 2.0) * M + n * (n - 1.0) * (n - 1.0) * N;
    }
    case GraphKind::circle: {
      const double n = m / 2.0;
      graph_with_edge_count(kind, m);
      return m * P + 2.0 * n * M + 4.0 * n * N;
    }
    case GraphKind::matching:
      graph_with_edge_count(kind, m);
      return m * P + m * N;
    case GraphKind::custom:
      break;
  }
  throw std::invalid_argument("no closed-form bound for custom graphs");
}

VarianceBoundSpec estimate_bound_constants(const NodeArmSet& arms,
                                           const DesignDistribution& mu,
                                           int n_samples, std::uint64_t seed) {
  if (n_samples < 2)
    throw std::invalid_argument("estimate_bound_constants needs n_samples >= 2");
  if (mu.size() != arms.size())
    throw std::invalid_argument("design size != arm count");
  const auto cdf = cumulative_weights(weight_vector(mu));
  Rng rng = make_rng(seed);

  // Path gadget 0-1-2: one draw of (X0, X1, X2) yields a single-edge block
  // for P, the source pair ((1,0),(1,2)) for M, and both chained pairs
  // ((0,1),(1,2)) and ((0,1),(1,0)) for N.
  std::vector<Eigen::MatrixXd> e01, e10, e12;
  e01.reserve(n_samples);
  e10.reserve(n_samples);
  e12.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const Eigen::VectorXd& x0 = arms.arm(draw_index(cdf, rng));
    const Eigen::VectorXd& x1 = arms.arm(draw_index(cdf, rng));
    const Eigen::VectorXd& x2 = arms.arm(draw_index(cdf, rng));
    const Eigen::VectorXd z01 = lift(x0, x1);
    const Eigen::VectorXd z10 = lift(x1, x0);
    const Eigen::VectorXd z12 = lift(x1, x2);
    e01.push_back(z01 * z01.transpose());
    e10.push_back(z10 * z10.transpose());
    e12.push_back(z12 * z12.transpose());
  }

  VarianceBoundSpec spec;
  spec.edge_variance = power_iteration_norm(cross_moment(e01, e01));
  spec.source_covariance = operator_norm(cross_moment(e10, e12));
  spec.chained_covariance = std::max(operator_norm(cross_moment(e01, e12)),
                                     operator_norm(cross_moment(e01, e10)));
  return spec;
}

double power_iteration_norm(const Eigen::MatrixXd& matrix, double rel_tol,
                            int max_iter) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("power iteration needs a square matrix");
  const auto p = matrix.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(p, 1.0 / std::sqrt(double(p)));
  // Deterministic perturbation breaks symmetry when the all-ones vector is
  // orthogonal to the leading eigenvector.
  for (Eigen::Index i = 0; i < p; ++i) v[i] += 1e-3 * ((i % 7) - 3.0) / double(p);
  v.normalize();

  double eigenvalue = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = matrix.selfadjointView<Eigen::Lower>() * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // matrix annihilates the iterate
    const double next = v.dot(w);
    w /= norm;
    const bool settled =
        std::abs(next - eigenvalue) <= rel_tol * std::max(std::abs(next), 1e-300);
    eigenvalue = next;
    v = std::move(w);
    if (settled && it > 0) break;
  }
  return std::abs(eigenvalue);
}

double operator_norm(const Eigen::MatrixXd& matrix, double rel_tol,
                     int max_iter) {
  const Eigen::MatrixXd gram = matrix.transpose() * matrix;
  return std::sqrt(power_iteration_norm(gram, rel_tol, max_iter));
}

void write_variance_csv(std::ostream& out,
                        const std::vector<VarianceEstimate>& estimates) {
  out << "kind,m,n_samples,norm,std_error\n";
  for (const auto& e : estimates)
    out << to_string(e.kind) << ',' << e.m << ',' << e.n_samples << ','
        << e.spectral_norm << ',' << e.std_error << '\n';
}

}  // namespace gbb
