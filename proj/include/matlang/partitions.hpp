#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matlang/graph.hpp"
#include "matlang/matrix.hpp"

namespace matlang {

// --- vertex partitions (colour refinement / 1WL) ---

struct Partition {
  // Disjoint nonempty vertex classes covering {0..n-1}, in canonical order
  // (sorted refinement history, ties by smallest vertex). Vertices inside a
  // part are ascending.
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> part_of;  // vertex -> part index

  std::size_t order() const { return part_of.size(); }
  // Indicator column vector of part i.
  ExactMatrix indicator(std::size_t i) const;
};

struct EquitableCertificate {
  Partition partition;
  // quotient(i, j) = number of neighbours in part j of any vertex of part i.
  ExactMatrix quotient;
};

// Coarsest equitable partition by iterated degree-count refinement: starting
// from the single class, vertices split whenever their per-class neighbour
// counts differ; the fixed point is reached within n rounds. The returned
// certificate satisfies diag(1_Vi) * A * 1_Vj = quotient(i,j) * 1_Vi exactly.
EquitableCertificate coarsest_equitable_partition(const Graph& g);

// Exact certificate check (used by tests and after construction).
bool verify_equitable(const Graph& g, const EquitableCertificate& cert);

struct CommonEquitablePartition {
  // Certificates with parts paired by index: sizes and quotient matrices
  // agree between the two graphs.
  EquitableCertificate g_cert;
  EquitableCertificate h_cert;
};

// Refines both graphs in lock-step with a shared colour dictionary; returns
// the paired coarsest certificates when the colour histograms coincide.
std::optional<CommonEquitablePartition> common_equitable_partition(const Graph& g,
                                                                   const Graph& h);

// --- edge partitions (2WL / stable colouring) ---

struct EdgePartition {
  Graph graph;                                   // the coloured graph
  std::vector<std::vector<std::size_t>> colour;  // colour[v][w]
  std::size_t num_colours = 0;
  // For each colour, its seed class: 2 = loop, 1 = edge, 0 = non-edge.
  std::vector<int> initial_class;

  std::size_t order() const { return graph.order(); }
  ExactMatrix indicator(std::size_t c) const;  // n x n 0/1 class matrix
  std::vector<std::size_t> colour_sizes() const;
};

// A pair's structure list: the nonzero counts p^{c,d} of two-step colour
// paths (c then d) from v1 to v2.
struct StructureList {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> entries;
};

StructureList structure_list(const EdgePartition& p, std::size_t v1, std::size_t v2);

// Fixed point of structure-list refinement from the seed colouring (loops 2,
// edges 1, non-edges 0); colours are canonically renamed each round by the
// sorted order of (previous colour, structure list) keys.
EdgePartition stable_edge_partition(const Graph& g);

struct Wl2Result {
  bool equivalent;
  // Per-colour cardinalities at the shared stable point.
  std::vector<std::pair<std::size_t, std::size_t>> histogram_g;
  std::vector<std::pair<std::size_t, std::size_t>> histogram_h;
  EdgePartition partition_g;
  EdgePartition partition_h;
};

// Synchronized refinement of both graphs with a shared colour dictionary;
// equivalent iff the stable colour sets and per-colour cardinalities agree.
Wl2Result wl2_equivalent(const Graph& g, const Graph& h);

// Verifies that the partition's classes form a coherent-algebra basis:
// classes partition the all-ones matrix, are closed under transposition,
// the identity and the adjacency matrix are unions of classes, and the
// products of class matrices decompose with constant integer structure
// constants. Throws StabilityViolation identifying the failure.
void coherent_basis_check(const EdgePartition& p);

}  // namespace matlang
