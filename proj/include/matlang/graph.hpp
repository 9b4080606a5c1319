#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matlang/matrix.hpp"

namespace matlang {

// Undirected simple graph (no self-loops) with ordered vertex set {0..n-1}.
// Vertices are 0-based internally; the JSON edge-list interchange format is
// 1-based.
class Graph {
 public:
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw DimensionMismatch("graphs must have at least one vertex");
  }
  Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t order() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  void add_edge(std::size_t u, std::size_t v);

  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  ExactMatrix adjacency() const;
  // Laplacian L = diag(A*1) - A.
  ExactMatrix laplacian() const;

  Graph relabel(const std::vector<std::size_t>& perm) const;  // v -> perm[v]

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adj_;
};

// --- generators / combinators ---

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph empty_graph(std::size_t n);
Graph petersen_graph();
// Rook's graph on a 4x4 board and the Shrikhande graph: the two
// srg(16,6,2,2) strongly regular graphs.
Graph rook_graph_4x4();
Graph shrikhande_graph();

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& g, const Graph& h);

// --- interchange formats ---

// graph6: 6-bit upper-triangle bitstream, bytes offset by 63.
Graph parse_graph6(const std::string& text);
std::string encode_graph6(const Graph& g);

// Edge-list JSON {"n": int, "edges": [[u,v],...]}, vertices 1-based.
Graph parse_edge_list_json(const std::string& text);

// Loads .g6 or .json graph files by extension.
Graph load_graph_file(const std::string& path);

// --- isomorphism (brute force with degree/invariant pruning; order <= 16) ---

std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g, const Graph& h);
bool isomorphic(const Graph& g, const Graph& h);

}  // namespace matlang
