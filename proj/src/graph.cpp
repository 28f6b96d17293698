#include "gbb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gbb {

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    case GraphKind::circle: return "circle";
    case GraphKind::matching: return "matching";
    case GraphKind::custom: return "custom";
  }
  return "custom";
}

GraphKind graph_kind_from_string(const std::string& name) {
  if (name == "star") return GraphKind::star;
  if (name == "complete") return GraphKind::complete;
  if (name == "circle") return GraphKind::circle;
  if (name == "matching") return GraphKind::matching;
  if (name == "custom") return GraphKind::custom;
  throw std::invalid_argument("unknown graph kind: " + name);
}

Graph::Graph(int n_nodes, std::vector<std::pair<int, int>> edges, GraphKind kind)
    : n_nodes_(n_nodes), edges_(std::move(edges)), kind_(kind) {
  if (n_nodes_ < 1) throw std::invalid_argument("graph needs at least one node");

  std::sort(edges_.begin(), edges_.end());
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || i >= n_nodes_ || j >= n_nodes_)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    if (!seen.insert({i, j}).second)
      throw std::invalid_argument("duplicate directed edge");
  }
  for (const auto& [i, j] : edges_) {
    if (!seen.count({j, i}))
      throw std::invalid_argument("asymmetric edge list: missing reverse of (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")");
  }

  adjacency_.assign(n_nodes_, {});
  for (const auto& [i, j] : edges_) adjacency_[i].push_back(j);
  // Edges are sorted, so each adjacency list is already ascending.
}

Graph make_star(int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("star graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * (n_nodes - 1));
  for (int i = 1; i < n_nodes; ++i) {
    edges.emplace_back(0, i);
    edges.emplace_back(i, 0);
  }
  return Graph(n_nodes, std::move(edges), GraphKind::star);
}

Graph make_complete(int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("complete graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n_nodes * (n_nodes - 1));
  for (int i = 0; i < n_nodes; ++i)
    for (int j = 0; j < n_nodes; ++j)
      if (i != j) edges.emplace_back(i, j);
  return Graph(n_nodes, std::move(edges), GraphKind::complete);
}

Graph make_circle(int n_nodes) {
  if (n_nodes < 3) throw std::invalid_argument("circle graph needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const int j = (i + 1) % n_nodes;
    edges.emplace_back(i, j);
    edges.emplace_back(j, i);
  }
  return Graph(n_nodes, std::move(edges), GraphKind::circle);
}

Graph make_matching(int n_nodes) {
  if (n_nodes < 2 || n_nodes % 2 != 0)
    throw std::invalid_argument("matching graph needs even n >= 2");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n_nodes);
  for (int k = 0; k < n_nodes / 2; ++k) {
    edges.emplace_back(2 * k, 2 * k + 1);
    edges.emplace_back(2 * k + 1, 2 * k);
  }
  return Graph(n_nodes, std::move(edges), GraphKind::matching);
}

Graph read_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: bad header line");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    int i, j;
    if (!(in >> i >> j)) throw std::invalid_argument("edge list: truncated input");
    edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges), GraphKind::custom);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << graph.n_nodes() << ' ' << graph.m() << '\n';
  for (const auto& [i, j] : graph.edges()) out << i << ' ' << j << '\n';
}

}  // namespace gbb
