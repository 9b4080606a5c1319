#pragma once

// Shared helpers for the test binaries.

#include <random>

#include "matlang/graph.hpp"
#include "matlang/matrix.hpp"

namespace matlang::testutil {

inline GaussianRational q(long num, long den = 1) { return {mpq_class(num, den), mpq_class(0)}; }

inline Graph random_graph(std::mt19937& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution edge(p);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

inline std::vector<std::size_t> random_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace matlang::testutil
