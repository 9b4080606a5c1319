#include "matlang/partitions.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "matlang/errors.hpp"

namespace matlang {

// --- vertex partitions ---

ExactMatrix Partition::indicator(std::size_t i) const {
  ExactMatrix v(order(), 1);
  for (std::size_t vertex : parts[i]) v.at(vertex, 0) = GaussianRational(1);
  return v;
}

namespace {

// One lock-step refinement pass over any number of graphs with a shared key
// dictionary. colours[k][v] is the colour of vertex v in graph k. Returns
// true when some colour split.
bool refine_vertex_colours_once(const std::vector<const Graph*>& graphs,
                                std::vector<std::vector<std::size_t>>& colours,
                                std::size_t num_colours, std::size_t& new_num_colours) {
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;  // (old colour, counts)
  std::map<Key, std::size_t> ids;
  std::vector<std::vector<Key>> keys(graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const Graph& g = *graphs[k];
    keys[k].resize(g.order());
    for (std::size_t v = 0; v < g.order(); ++v) {
      std::vector<std::size_t> counts(num_colours, 0);
      for (std::size_t u = 0; u < g.order(); ++u)
        if (g.adjacent(v, u)) ++counts[colours[k][u]];
      keys[k][v] = {colours[k][v], std::move(counts)};
      ids.emplace(keys[k][v], 0);
    }
  }
  std::size_t next = 0;
  for (auto& [key, id] : ids) id = next++;  // canonical: ids in sorted key order
  bool changed = (next != num_colours);
  for (std::size_t k = 0; k < graphs.size(); ++k)
    for (std::size_t v = 0; v < graphs[k]->order(); ++v) {
      std::size_t id = ids.at(keys[k][v]);
      if (id != colours[k][v]) changed = true;
      colours[k][v] = id;
    }
  new_num_colours = next;
  return changed;
}

std::vector<std::vector<std::size_t>> refine_vertex_colours(
    const std::vector<const Graph*>& graphs) {
  std::vector<std::vector<std::size_t>> colours(graphs.size());
  std::size_t total = 0;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    colours[k].assign(graphs[k]->order(), 0);
    total += graphs[k]->order();
  }
  std::size_t num_colours = 1;
  for (std::size_t round = 0; round < total; ++round) {
    std::size_t next = num_colours;
    if (!refine_vertex_colours_once(graphs, colours, num_colours, next)) break;
    num_colours = next;
  }
  return colours;
}

Partition partition_from_colours(const std::vector<std::size_t>& colour, std::size_t num) {
  Partition p;
  p.part_of = colour;
  p.parts.assign(num, {});
  for (std::size_t v = 0; v < colour.size(); ++v) p.parts[colour[v]].push_back(v);
  return p;
}

EquitableCertificate certificate_for(const Graph& g, const std::vector<std::size_t>& colour,
                                     std::size_t num) {
  EquitableCertificate cert{partition_from_colours(colour, num), ExactMatrix(num, num)};
  for (std::size_t i = 0; i < num; ++i) {
    std::size_t rep = cert.partition.parts[i].front();
    for (std::size_t j = 0; j < num; ++j) {
      std::size_t deg = 0;
      for (std::size_t u : cert.partition.parts[j])
        if (g.adjacent(rep, u)) ++deg;
      cert.quotient.at(i, j) = GaussianRational(static_cast<long>(deg));
    }
  }
  if (!verify_equitable(g, cert))
    throw InternalFault("colour refinement produced a non-equitable partition");
  return cert;
}

std::size_t colour_count(const std::vector<std::size_t>& colour) {
  return colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
}

}  // namespace

bool verify_equitable(const Graph& g, const EquitableCertificate& cert) {
  const ExactMatrix a = g.adjacency();
  const std::size_t num = cert.partition.parts.size();
  for (std::size_t i = 0; i < num; ++i) {
    ExactMatrix ind_i = cert.partition.indicator(i);
    ExactMatrix diag_i(g.order(), g.order());
    for (std::size_t v = 0; v < g.order(); ++v) diag_i.at(v, v) = ind_i.at(v, 0);
    for (std::size_t j = 0; j < num; ++j) {
      // diag(1_Vi) * A * 1_Vj must equal quotient(i,j) * 1_Vi exactly.
      ExactMatrix lhs = mat_mul(mat_mul(diag_i, a), cert.partition.indicator(j));
      ExactMatrix rhs = ind_i.scaled(cert.quotient.at(i, j));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

EquitableCertificate coarsest_equitable_partition(const Graph& g) {
  auto colours = refine_vertex_colours({&g});
  return certificate_for(g, colours[0], colour_count(colours[0]));
}

std::optional<CommonEquitablePartition> common_equitable_partition(const Graph& g,
                                                                   const Graph& h) {
  if (g.order() != h.order()) throw OrderMismatch("graphs must have the same order");
  auto colours = refine_vertex_colours({&g, &h});
  std::size_t num = std::max(colour_count(colours[0]), colour_count(colours[1]));
  // The histograms must agree: same colours, same cardinalities.
  std::vector<std::size_t> size_g(num, 0), size_h(num, 0);
  for (std::size_t c : colours[0]) ++size_g[c];
  for (std::size_t c : colours[1]) ++size_h[c];
  if (size_g != size_h) return std::nullopt;
  CommonEquitablePartition out{certificate_for(g, colours[0], num),
                               certificate_for(h, colours[1], num)};
  // Lock-step refinement pairs parts by shared colour; the quotients then
  // agree because the final refinement keys do.
  if (out.g_cert.quotient != out.h_cert.quotient)
    throw InternalFault("paired quotient matrices disagree at the joint fixed point");
  return out;
}

// --- edge partitions ---

ExactMatrix EdgePartition::indicator(std::size_t c) const {
  const std::size_t n = order();
  ExactMatrix e(n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (colour[v][w] == c) e.at(v, w) = GaussianRational(1);
  return e;
}

std::vector<std::size_t> EdgePartition::colour_sizes() const {
  std::vector<std::size_t> sizes(num_colours, 0);
  for (const auto& row : colour)
    for (std::size_t c : row) ++sizes[c];
  return sizes;
}

StructureList structure_list(const EdgePartition& p, std::size_t v1, std::size_t v2) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
  for (std::size_t u = 0; u < p.order(); ++u) ++counts[{p.colour[v1][u], p.colour[u][v2]}];
  StructureList out;
  for (const auto& [cd, count] : counts) out.entries.emplace_back(cd, count);
  return out;
}

namespace {

struct EdgeColouring {
  std::vector<std::vector<std::size_t>> colour;
  std::vector<int> initial_class;  // per colour id
  std::size_t num_colours;
};

// Lock-step 2WL refinement over any number of graphs with a shared key
// dictionary; canonical ids per round from the sorted key order.
std::vector<EdgeColouring> refine_edge_colours(const std::vector<const Graph*>& graphs) {
  const std::size_t count = graphs.size();
  std::vector<EdgeColouring> cols(count);

  // Seed colouring: loops 2, edges 1, non-edges 0, renamed to the sorted
  // order of the seed values that actually occur.
  std::map<int, std::size_t> seed_ids;
  for (std::size_t k = 0; k < count; ++k) {
    const Graph& g = *graphs[k];
    for (std::size_t v = 0; v < g.order(); ++v)
      for (std::size_t w = 0; w < g.order(); ++w)
        seed_ids.emplace(v == w ? 2 : (g.adjacent(v, w) ? 1 : 0), 0);
  }
  std::size_t next_seed = 0;
  std::vector<int> initial_of_id;
  for (auto& [seed, id] : seed_ids) {
    id = next_seed++;
    initial_of_id.push_back(seed);
  }
  for (std::size_t k = 0; k < count; ++k) {
    const Graph& g = *graphs[k];
    const std::size_t n = g.order();
    cols[k].colour.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        cols[k].colour[v][w] = seed_ids.at(v == w ? 2 : (g.adjacent(v, w) ? 1 : 0));
    cols[k].num_colours = next_seed;
    cols[k].initial_class = initial_of_id;
  }

  std::size_t max_rounds = 0;
  for (const auto* g : graphs) max_rounds += g->order() * g->order();
  std::size_t num_colours = next_seed;
  using SL = std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>>;
  using Key = std::pair<std::size_t, SL>;  // (old colour, structure list)
  for (std::size_t round = 0; round < max_rounds; ++round) {
    std::map<Key, std::size_t> ids;
    std::vector<std::vector<std::vector<Key>>> keys(count);
    for (std::size_t k = 0; k < count; ++k) {
      const Graph& g = *graphs[k];
      const std::size_t n = g.order();
      keys[k].assign(n, std::vector<Key>(n));
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
          std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
          for (std::size_t u = 0; u < n; ++u)
            ++counts[{cols[k].colour[v][u], cols[k].colour[u][w]}];
          SL list(counts.begin(), counts.end());
          keys[k][v][w] = {cols[k].colour[v][w], std::move(list)};
          ids.emplace(keys[k][v][w], 0);
        }
    }
    std::size_t next = 0;
    for (auto& [key, id] : ids) id = next++;  // canonical: sorted key order
    // A new colour inherits the seed class of the old colour in its key.
    std::vector<int> ancestry(next);
    for (const auto& [key, id] : ids) ancestry[id] = initial_of_id.at(key.first);
    bool changed = (next != num_colours);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t n = graphs[k]->order();
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
          std::size_t id = ids.at(keys[k][v][w]);
          if (id != cols[k].colour[v][w]) changed = true;
          cols[k].colour[v][w] = id;
        }
    }
    for (std::size_t k = 0; k < count; ++k) {
      cols[k].num_colours = next;
      cols[k].initial_class = ancestry;
    }
    initial_of_id = ancestry;
    num_colours = next;
    if (!changed) break;
  }
  return cols;
}

EdgePartition partition_from(const Graph& g, EdgeColouring&& c) {
  return EdgePartition{g, std::move(c.colour), c.num_colours, std::move(c.initial_class)};
}

}  // namespace

EdgePartition stable_edge_partition(const Graph& g) {
  auto cols = refine_edge_colours({&g});
  return partition_from(g, std::move(cols[0]));
}

Wl2Result wl2_equivalent(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) throw OrderMismatch("graphs must have the same order");
  auto cols = refine_edge_colours({&g, &h});
  EdgePartition pg = partition_from(g, std::move(cols[0]));
  EdgePartition ph = partition_from(h, std::move(cols[1]));
  std::vector<std::size_t> sg = pg.colour_sizes();
  std::vector<std::size_t> sh = ph.colour_sizes();
  Wl2Result out{sg == sh, {}, {}, std::move(pg), std::move(ph)};
  for (std::size_t c = 0; c < sg.size(); ++c) {
    if (sg[c]) out.histogram_g.emplace_back(c, sg[c]);
    if (sh[c]) out.histogram_h.emplace_back(c, sh[c]);
  }
  return out;
}

void coherent_basis_check(const EdgePartition& p) {
  const std::size_t n = p.order();
  const std::size_t num = p.num_colours;
  auto fail = [](const std::string& msg) { throw StabilityViolation(msg); };

  std::vector<std::size_t> sizes = p.colour_sizes();
  std::size_t covered = 0;
  for (std::size_t s : sizes) covered += s;
  if (covered != n * n) fail("classes do not partition the vertex-pair set");

  // Transpose closure: the colour of (w,v) is determined by the colour of (v,w).
  std::vector<std::optional<std::size_t>> transpose_of(num);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      std::size_t c = p.colour[v][w], ct = p.colour[w][v];
      if (!transpose_of[c]) transpose_of[c] = ct;
      if (*transpose_of[c] != ct) fail("class " + std::to_string(c) + " is not transpose-closed");
    }

  // The identity and the adjacency matrix are unions of classes.
  std::vector<int> on_diag(num, -1), on_edge(num, -1);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      std::size_t c = p.colour[v][w];
      int d = (v == w) ? 1 : 0;
      int e = p.graph.adjacent(v, w) ? 1 : 0;
      if (on_diag[c] == -1) on_diag[c] = d;
      if (on_diag[c] != d) fail("class " + std::to_string(c) + " mixes loops and non-loops");
      if (on_edge[c] == -1) on_edge[c] = e;
      if (on_edge[c] != e) fail("class " + std::to_string(c) + " mixes edges and non-edges");
    }

  // Constant structure constants: E_c * E_d = sum_e p^{c,d}_e E_e, i.e. the
  // two-step counts depend on a pair only through its colour.
  std::vector<std::optional<StructureList>> rep_list(num);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      std::size_t e = p.colour[v][w];
      StructureList l = structure_list(p, v, w);
      if (!rep_list[e]) {
        rep_list[e] = std::move(l);
        continue;
      }
      if (rep_list[e]->entries != l.entries) {
        // Identify a (c,d) witness for the report.
        std::string detail = "structure constants not constant on class e=" + std::to_string(e);
        for (std::size_t k = 0; k < std::max(rep_list[e]->entries.size(), l.entries.size());
             ++k) {
          if (k >= rep_list[e]->entries.size() || k >= l.entries.size() ||
              rep_list[e]->entries[k] != l.entries[k]) {
            const auto& probe =
                k < l.entries.size() ? l.entries[k] : rep_list[e]->entries[k];
            detail += " at (c,d)=(" + std::to_string(probe.first.first) + "," +
                      std::to_string(probe.first.second) + ")";
            break;
          }
        }
        fail(detail);
      }
    }
}

}  // namespace matlang
