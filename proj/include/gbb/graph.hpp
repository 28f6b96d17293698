#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gbb {

enum class GraphKind { star, complete, circle, matching, custom };

const char* to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

// Directed symmetric graph: (i, j) present iff (j, i) present, no self-loops,
// no duplicate edges. Edges are stored in lexicographic order and the object
// is immutable after construction, so iteration order is stable across runs.
class Graph {
 public:
  Graph(int n_nodes, std::vector<std::pair<int, int>> edges,
        GraphKind kind = GraphKind::custom);

  int n_nodes() const { return n_nodes_; }
  int m() const { return static_cast<int>(edges_.size()); }
  GraphKind kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Undirected neighborhood of node i, ascending.
  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

 private:
  int n_nodes_;
  std::vector<std::pair<int, int>> edges_;
  GraphKind kind_;
  std::vector<std::vector<int>> adjacency_;
};

// Node 0 is the center; m = 2(n-1).
Graph make_star(int n_nodes);
// All ordered pairs; m = n(n-1).
Graph make_complete(int n_nodes);
// Ring i ~ (i+1) mod n; m = 2n. Requires n >= 3.
Graph make_circle(int n_nodes);
// Pairs (2k, 2k+1); m = n. Requires n even.
Graph make_matching(int n_nodes);

// Edge-list text format: first line "n m", then one "i j" directed pair per
// line. Asymmetric input is rejected, not auto-completed.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& graph);

}  // namespace gbb
