#include "matlang/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <utility>

#include "matlang/partitions.hpp"

namespace matlang {

namespace {

// --- small integer-matrix helpers for the recovery searches ---

using I64Mat = std::vector<long long>;  // n x n, row major

I64Mat adjacency_i64(const Graph& g) {
  std::size_t n = g.order();
  I64Mat a(n * n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) a[u * n + v] = g.adjacent(u, v) ? 1 : 0;
  return a;
}

I64Mat imul(std::size_t n, const I64Mat& a, const I64Mat& b) {
  I64Mat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long long aik = a[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

long long itrace(std::size_t n, const I64Mat& a) {
  long long t = 0;
  for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
  return t;
}

// [tr(M^k)] for k = 1..n, for M and its graph complement; entries stay well
// inside 64 bits for the search orders used here (n <= 7).
std::vector<long long> spectral_key(std::size_t n, const I64Mat& a) {
  I64Mat comp(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      comp[i * n + j] = (i == j) ? 0 : 1 - a[i * n + j];
  std::vector<long long> key;
  for (const I64Mat* m : {&a, &std::as_const(comp)}) {
    I64Mat p = *m;
    key.push_back(itrace(n, p));
    for (std::size_t k = 2; k <= n; ++k) {
      p = imul(n, p, *m);
      key.push_back(itrace(n, p));
    }
  }
  return key;
}

Graph graph_from_i64(std::size_t n, const I64Mat& a) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (a[u * n + v]) g.add_edge(u, v);
  return g;
}

// Number of length-2 walks both of whose edges lie on a triangle: the
// quantity the pointwise-product sentence counts.
long long triangle_path2_count(std::size_t n, const I64Mat& a) {
  I64Mat a2 = imul(n, a, a);
  I64Mat t(n * n, 0);
  for (std::size_t i = 0; i < n * n; ++i) t[i] = (a[i] != 0 && a2[i] != 0) ? 1 : 0;
  I64Mat t2 = imul(n, t, t);
  long long total = 0;
  for (long long x : t2) total += x;
  return total;
}

void charge(std::size_t& budget, const std::string& entry) {
  if (budget == 0)
    throw RecoveryFailure(entry + ": recovery search budget exhausted");
  --budget;
}

// --- g4-h4: exhaustive search, ascending order then ascending edge mask ---
//
// Smallest pair of non-isomorphic graphs that are cospectral with cospectral
// complements, where the first member has an isolated vertex and the second
// has none. Graphs of order n are enumerated by the bitmask of their edge
// set over the lexicographic list of vertex pairs, so the result is
// deterministic.

std::pair<Graph, Graph> search_g4(std::size_t budget) {
  for (std::size_t n = 5; n <= 7; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs, inner;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        pairs.emplace_back(u, v);
        if (v < n - 1) inner.emplace_back(u, v);
      }
    // Phase 1: all graphs with the last vertex isolated, keyed by the trace
    // vectors of the graph and its complement.
    std::map<std::vector<long long>, std::vector<std::uint32_t>> table;
    std::set<std::pair<long long, long long>> prefix;  // (tr A^2, tr A^3)
    for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
      charge(budget, "g4-h4");
      I64Mat a(n * n, 0);
      for (std::size_t i = 0; i < inner.size(); ++i)
        if (mask >> i & 1) {
          auto [u, v] = inner[i];
          a[u * n + v] = a[v * n + u] = 1;
        }
      auto key = spectral_key(n, a);
      prefix.insert({key[1], key[2]});
      table[std::move(key)].push_back(mask);
    }
    // Phase 2: all graphs without isolated vertices, cheapest invariants
    // first.
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      charge(budget, "g4-h4");
      I64Mat a(n * n, 0);
      std::vector<int> deg(n, 0);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) {
          auto [u, v] = pairs[i];
          a[u * n + v] = a[v * n + u] = 1;
          ++deg[u], ++deg[v];
        }
      if (std::find(deg.begin(), deg.end(), 0) != deg.end()) continue;
      I64Mat a2 = imul(n, a, a);
      long long t2 = itrace(n, a2);
      long long t3 = itrace(n, imul(n, a2, a));
      if (!prefix.count({t2, t3})) continue;
      auto it = table.find(spectral_key(n, a));
      if (it == table.end()) continue;
      Graph h = graph_from_i64(n, a);
      for (std::uint32_t gmask : it->second) {
        I64Mat ga(n * n, 0);
        for (std::size_t i = 0; i < inner.size(); ++i)
          if (gmask >> i & 1) {
            auto [u, v] = inner[i];
            ga[u * n + v] = ga[v * n + u] = 1;
          }
        Graph g = graph_from_i64(n, ga);
        if (!isomorphic(g, h)) return {g, h};
      }
    }
  }
  throw RecoveryFailure("g4-h4: no pair up to order 7");
}

// --- seam switching (switching-set construction) ---
//
// For a 4-vertex set C inducing a regular subgraph, where every outside
// vertex has 0, 2 or 4 neighbours in C, complementing the edges between C
// and the outside vertices with exactly 2 neighbours yields a cospectral
// mate: the block matrix diag((1/2)J - I, I) is orthogonal, doubly
// quasi-stochastic, and conjugates one adjacency matrix into the other.

bool switch_candidate(std::size_t n, const I64Mat& a, const std::vector<std::size_t>& c,
                      I64Mat& out) {
  long long d0 = 0;
  for (std::size_t j : c) d0 += a[c[0] * n + j];
  for (std::size_t u : c) {
    long long d = 0;
    for (std::size_t j : c) d += a[u * n + j];
    if (d != d0) return false;  // C must induce a regular subgraph
  }
  std::vector<std::size_t> half;
  for (std::size_t v = 0; v < n; ++v) {
    if (std::find(c.begin(), c.end(), v) != c.end()) continue;
    long long cnt = 0;
    for (std::size_t u : c) cnt += a[u * n + v];
    if (cnt != 0 && cnt != 2 && cnt != 4) return false;
    if (cnt == 2) half.push_back(v);
  }
  if (half.empty()) return false;  // switching would be the identity
  out = a;
  for (std::size_t v : half)
    for (std::size_t u : c) {
      out[u * n + v] = 1 - a[u * n + v];
      out[v * n + u] = out[u * n + v];
    }
  return true;
}

// --- g5-h5: cospectral regular pair separated by the stable edge partition ---
//
// Seeded randomized search: random regular base graphs (pairing model), all
// 4-subsets tried as switching sets, accepted when the mate has a different
// triangle-path-2 count and the synchronized stable edge partitions differ
// (which also certifies non-isomorphism).

I64Mat random_regular(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < k; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    I64Mat a(n * n, 0);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      std::size_t u = stubs[i], v = stubs[i + 1];
      if (u == v || a[u * n + v]) {
        ok = false;
        break;
      }
      a[u * n + v] = a[v * n + u] = 1;
    }
    if (ok) return a;
  }
  return {};
}

void subsets4(std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> c(4);
  for (c[0] = 0; c[0] < n; ++c[0])
    for (c[1] = c[0] + 1; c[1] < n; ++c[1])
      for (c[2] = c[1] + 1; c[2] < n; ++c[2])
        for (c[3] = c[2] + 1; c[3] < n; ++c[3])
          if (f(c)) return;
}

std::pair<Graph, Graph> search_g5(std::size_t budget) {
  std::mt19937_64 rng(2024);
  std::optional<std::pair<Graph, Graph>> found;
  while (!found) {
    charge(budget, "g5-h5");
    std::size_t n = 8 + rng() % 5;
    std::size_t k = 3 + rng() % (n - 5);
    if (n * k % 2) continue;
    I64Mat a = random_regular(n, k, rng);
    if (a.empty()) continue;
    subsets4(n, [&](const std::vector<std::size_t>& c) {
      I64Mat b;
      if (!switch_candidate(n, a, c, b)) return false;
      if (triangle_path2_count(n, a) == triangle_path2_count(n, b)) return false;
      Graph g = graph_from_i64(n, a), h = graph_from_i64(n, b);
      if (wl2_equivalent(g, h).equivalent) return false;
      if (!cospectral(g, h) || g.degree(0) != h.degree(0))
        throw InternalFault("g5-h5: switching produced a non-cospectral mate");
      found = {std::move(g), std::move(h)};
      return true;
    });
  }
  return *found;
}

// --- g6-h6: cospectral pair with a common equitable partition but ---
// --- differing spanning-tree counts ---
//
// Seeded randomized search over non-regular base graphs built so that
// C = {0,1,2,3} is a valid switching set by construction. The oracle demands
// tr(L^4) to differ as well: under a common equitable partition the degree
// matrix lies in the span of the part indicators, so a differing Laplacian
// trace hands the bounded trace-word decider a distinguishing word of length
// at most 4. (tr(L^3) can never differ here: it is determined by the degree
// multiset and tr(A^3), both of which the oracle's other conditions force to
// agree.)

// Fast screen for a common equitable partition: joint colour refinement
// with a shared dictionary, accepting when the stable colour histograms
// coincide. The exact library check re-verifies accepted candidates.
bool fast_common_cep(std::size_t n, const I64Mat& a, const I64Mat& b) {
  std::vector<int> ca(n, 0), cb(n, 0);
  while (true) {
    using Sig = std::pair<int, std::vector<int>>;
    auto sig_of = [n](const I64Mat& m, const std::vector<int>& col, std::size_t v) {
      Sig s{col[v], {}};
      for (std::size_t u = 0; u < n; ++u)
        if (m[v * n + u]) s.second.push_back(col[u]);
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    std::map<Sig, int> dict;
    std::vector<Sig> sa(n), sb(n);
    for (std::size_t v = 0; v < n; ++v) {
      sa[v] = sig_of(a, ca, v);
      sb[v] = sig_of(b, cb, v);
      dict.emplace(sa[v], 0);
      dict.emplace(sb[v], 0);
    }
    int next = 0;
    for (auto& [sig, id] : dict) id = next++;
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      int na = dict[sa[v]], nb = dict[sb[v]];
      if (na != ca[v] || nb != cb[v]) changed = true;
      ca[v] = na;
      cb[v] = nb;
    }
    if (!changed) break;
  }
  std::vector<int> ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb;
}

// Determinant of the reduced Laplacian (the spanning-tree count) in 64-bit
// fraction-free elimination; safe for the search orders used here (n <= 10).
long long i64_spanning_trees(std::size_t n, const I64Mat& a) {
  std::size_t m = n - 1;
  std::vector<long long> l(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    long long d = 0;
    for (std::size_t j = 0; j < n; ++j) d += a[(i + 1) * n + j];
    l[i * m + i] = d;
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) l[i * m + j] = -a[(i + 1) * n + (j + 1)];
  }
  long long prev = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (l[k * m + k] == 0) {
      std::size_t p = k + 1;
      while (p < m && l[p * m + k] == 0) ++p;
      if (p == m) return 0;
      for (std::size_t j = 0; j < m; ++j) std::swap(l[k * m + j], l[p * m + j]);
      for (std::size_t j = 0; j < m; ++j) l[k * m + j] = -l[k * m + j];
    }
    for (std::size_t i = k + 1; i < m; ++i)
      for (std::size_t j = k + 1; j < m; ++j)
        l[i * m + j] = (l[i * m + j] * l[k * m + k] - l[i * m + k] * l[k * m + j]) / prev;
    prev = l[k * m + k];
  }
  return l[(m - 1) * m + (m - 1)];
}

long long i64_laplacian_trace4(std::size_t n, const I64Mat& a) {
  I64Mat l(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    long long d = 0;
    for (std::size_t j = 0; j < n; ++j) d += a[i * n + j];
    l[i * n + i] = d;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) l[i * n + j] = -a[i * n + j];
  }
  I64Mat l2 = imul(n, l, l);
  return itrace(n, imul(n, l2, l2));
}

std::pair<Graph, Graph> search_g6(std::size_t budget) {
  std::mt19937_64 rng(517);
  static const std::vector<std::vector<std::pair<std::size_t, std::size_t>>> c_shapes = {
      {},
      {{0, 1}, {2, 3}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
  };
  while (true) {
    charge(budget, "g6-h6");
    std::size_t n = 8 + rng() % 3;
    I64Mat a(n * n, 0);
    for (auto [u, v] : c_shapes[rng() % 4]) a[u * n + v] = a[v * n + u] = 1;
    std::vector<std::size_t> cvx = {0, 1, 2, 3};
    for (std::size_t v = 4; v < n; ++v) {
      std::size_t cnt = 2 * (rng() % 3);
      std::shuffle(cvx.begin(), cvx.end(), rng);
      for (std::size_t i = 0; i < cnt; ++i) a[cvx[i] * n + v] = a[v * n + cvx[i]] = 1;
    }
    for (std::size_t u = 4; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng() & 1) a[u * n + v] = a[v * n + u] = 1;
    I64Mat b;
    if (!switch_candidate(n, a, {0, 1, 2, 3}, b)) continue;
    std::vector<long long> da(n, 0), db(n, 0);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        da[u] += a[u * n + v];
        db[u] += b[u * n + v];
      }
    if (std::count(da.begin(), da.end(), da[0]) == static_cast<long>(n))
      continue;  // regular pairs share the Laplacian spectrum
    std::vector<long long> sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) continue;  // equal degree multisets are necessary for a CEP
    if (i64_laplacian_trace4(n, a) == i64_laplacian_trace4(n, b)) continue;
    if (i64_spanning_trees(n, a) == i64_spanning_trees(n, b)) continue;
    if (!fast_common_cep(n, a, b)) continue;
    Graph g = graph_from_i64(n, a), h = graph_from_i64(n, b);
    if (isomorphic(g, h)) continue;
    // Exact re-verification of everything the screens established.
    if (!common_equitable_partition(g, h) || !cospectral(g, h))
      throw InternalFault("g6-h6: fast screens disagree with the exact checks");
    auto lg = laplacian_invariants(g), lh = laplacian_invariants(h);
    if (lg.spanning_trees == lh.spanning_trees || lg.trace_powers[3] == lh.trace_powers[3])
      throw InternalFault("g6-h6: fast screens disagree with the exact checks");
    return {g, h};
  }
}

// Memoized searches: the corpus is loaded repeatedly by tests and tools, the
// searched pairs are deterministic, so run each search once per process.
const std::pair<Graph, Graph>& recovered_pair(const std::string& name, std::size_t budget,
                                              std::pair<Graph, Graph> (*search)(std::size_t)) {
  static std::mutex mu;
  static std::map<std::string, std::pair<Graph, Graph>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  if (budget == 0) throw RecoveryFailure(name + ": recovery disabled (budget 0)");
  return cache.emplace(name, search(budget)).first->second;
}

// --- explicit data ---

Graph g3_graph() {  // a hexagon, in the labelling the stored witness expects
  return Graph(6, {{0, 2}, {0, 5}, {1, 3}, {1, 4}, {2, 4}, {3, 5}});
}

Graph h3_graph() {  // two triangles
  return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

// Doubly stochastic Q with A_g3 * Q = Q * A_h3: hexagon vertex at cycle
// position p maps with weight 1/2 onto vertex (p mod 3) of each triangle.
ExactMatrix g3_h3_conjugacy() {
  ExactMatrix q(6, 6);
  const std::size_t position_of[6] = {0, 3, 1, 4, 2, 5};  // hexagon cycle 0-2-4-1-3-5
  for (std::size_t v = 0; v < 6; ++v) {
    std::size_t r = position_of[v] % 3;
    q.at(v, r) = GaussianRational(mpq_class(1, 2));
    q.at(v, r + 3) = GaussianRational(mpq_class(1, 2));
  }
  return q;
}

std::vector<ExpectedRow> rows_equivalent_up_to(int last_equivalent) {
  // Fragments listed weakest-to-strongest along the diag-free chain first.
  static const FragmentId order[] = {
      FragmentId::MulTr,          FragmentId::MulConjOnes,
      FragmentId::MulTrConjOnes,  FragmentId::MulConjOnesDiag,
      FragmentId::MulTrConjOnesVprod, FragmentId::MulTrConjOnesDiag,
      FragmentId::FullMatlang,
  };
  std::vector<ExpectedRow> rows;
  for (int i = 0; i < 7; ++i)
    rows.push_back({order[i], i <= last_equivalent ? Verdict::Equivalent : Verdict::Distinguished});
  return rows;
}

CorpusEntry make_g1() {
  CorpusEntry e{"g1-h1",
                disjoint_union(cycle_graph(4), empty_graph(1)),
                complete_bipartite(1, 4),
                "constructed",
                "smallest cospectral non-isomorphic pair: the 4-cycle plus an "
                "isolated vertex versus the 4-star",
                {},
                std::nullopt};
  e.expected_rows = {{FragmentId::MulTr, Verdict::Equivalent},
                     {FragmentId::MulConjOnes, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnes, Verdict::Distinguished},
                     {FragmentId::MulConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_g3() {
  CorpusEntry e{"g3-h3",
                g3_graph(),
                h3_graph(),
                "explicit",
                "hexagon versus two triangles, with the stored doubly "
                "stochastic conjugacy verified exactly",
                {},
                g3_h3_conjugacy()};
  ExactMatrix ag = e.g.adjacency(), ah = e.h.adjacency();
  if (mat_mul(ag, *e.conjugacy) != mat_mul(*e.conjugacy, ah))
    throw InternalFault("g3-h3: stored conjugacy does not intertwine the pair");
  e.expected_rows = {{FragmentId::MulTr, Verdict::Distinguished},
                     {FragmentId::MulConjOnes, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnes, Verdict::Distinguished},
                     {FragmentId::MulConjOnesDiag, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_g4(std::size_t budget) {
  const auto& [g, h] = recovered_pair("g4-h4", budget, search_g4);
  CorpusEntry e{"g4-h4",
                g,
                h,
                "recovered",
                "smallest non-isomorphic pair, cospectral with cospectral "
                "complements, first member with an isolated vertex and second "
                "without (exhaustive search by order, then by edge bitmask)",
                {},
                std::nullopt};
  e.expected_rows = {{FragmentId::MulTr, Verdict::Equivalent},
                     {FragmentId::MulConjOnes, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnes, Verdict::Equivalent},
                     {FragmentId::MulConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_g2(std::size_t budget) {
  CorpusEntry g4 = make_g4(budget);
  CorpusEntry e{"g2-h2",
                disjoint_union(g3_graph(), g4.g),
                disjoint_union(h3_graph(), g4.h),
                "constructed",
                "disjoint unions of the g3-h3 and g4-h4 members: equal walk "
                "counts of every length, yet not cospectral and no common "
                "equitable partition (the first member has an isolated "
                "vertex, the second does not)",
                {},
                std::nullopt};
  e.expected_rows = {{FragmentId::MulTr, Verdict::Distinguished},
                     {FragmentId::MulConjOnes, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnes, Verdict::Distinguished},
                     {FragmentId::MulConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Distinguished},
                     {FragmentId::MulTrConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_g5(std::size_t budget) {
  const auto& [g, h] = recovered_pair("g5-h5", budget, search_g5);
  CorpusEntry e{"g5-h5",
                g,
                h,
                "stand-in",
                "cospectral regular non-isomorphic pair with differing "
                "triangle-path-2 counts and differing stable edge partitions "
                "(seeded switching-set search over random regular graphs)",
                {},
                std::nullopt};
  // The bounded trace-word row is omitted: its verdict depends on the
  // decider's word budget.
  e.expected_rows = {{FragmentId::MulTr, Verdict::Equivalent},
                     {FragmentId::MulConjOnes, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnes, Verdict::Equivalent},
                     {FragmentId::MulConjOnesDiag, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Equivalent},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_g6(std::size_t budget) {
  const auto& [g, h] = recovered_pair("g6-h6", budget, search_g6);
  CorpusEntry e{"g6-h6",
                g,
                h,
                "stand-in",
                "cospectral non-isomorphic pair with a common equitable "
                "partition but differing spanning-tree counts and differing "
                "tr(L^4) (seeded switching-set search over non-regular "
                "graphs)",
                {},
                std::nullopt};
  e.expected_rows = {{FragmentId::MulTr, Verdict::Equivalent},
                     {FragmentId::MulConjOnes, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnes, Verdict::Equivalent},
                     {FragmentId::MulConjOnesDiag, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnesVprod, Verdict::Equivalent},
                     {FragmentId::MulTrConjOnesDiag, Verdict::Distinguished},
                     {FragmentId::FullMatlang, Verdict::Distinguished}};
  return e;
}

CorpusEntry make_rook_shrikhande() {
  Graph rook = rook_graph_4x4(), shri = shrikhande_graph();
  // Verify the strongly-regular parameters (16, 6, 2, 2) for both:
  // A^2 = 6*I + 2*A + 2*(J - I - A).
  for (const Graph* gp : {&rook, &shri}) {
    ExactMatrix a = gp->adjacency();
    ExactMatrix lhs = mat_mul(a, a);
    ExactMatrix expect(16, 16);
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j)
        expect.at(i, j) = GaussianRational(i == j ? 6 : 2);  // lambda = mu = 2
    if (lhs != expect)
      throw InternalFault("rook-shrikhande: srg(16,6,2,2) parameter check failed");
  }
  CorpusEntry e{"rook-shrikhande",
                rook,
                shri,
                "constructed",
                "the two strongly regular graphs with parameters "
                "(16, 6, 2, 2): equal stable edge partitions yet "
                "non-isomorphic",
                rows_equivalent_up_to(6),
                std::nullopt};
  return e;
}

}  // namespace

std::vector<std::string> corpus_entry_names() {
  return {"g1-h1", "g2-h2", "g3-h3", "g4-h4", "g5-h5", "g6-h6", "rook-shrikhande"};
}

CorpusEntry load_corpus_entry(const std::string& name, std::size_t budget) {
  if (name == "g1-h1") return make_g1();
  if (name == "g2-h2") return make_g2(budget);
  if (name == "g3-h3") return make_g3();
  if (name == "g4-h4") return make_g4(budget);
  if (name == "g5-h5") return make_g5(budget);
  if (name == "g6-h6") return make_g6(budget);
  if (name == "rook-shrikhande") return make_rook_shrikhande();
  throw FormatError("unknown corpus entry '" + name + "'", 0);
}

std::vector<CorpusEntry> load_corpus(std::size_t budget) {
  std::vector<CorpusEntry> entries;
  for (const std::string& name : corpus_entry_names())
    entries.push_back(load_corpus_entry(name, budget));
  return entries;
}

}  // namespace matlang
