// Acceptance gate: one pass/fail line per criterion. Exact checks use zero
// tolerance; floating-point witness checks are pinned at 1e-8 (residuals
// normalized by the value magnitude where noted).

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sys/wait.h>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matlang/corpus.hpp"
#include "matlang/equivalence.hpp"
#include "matlang/eval.hpp"
#include "matlang/expr.hpp"
#include "matlang/graph.hpp"
#include "matlang/partitions.hpp"
#include "matlang/randexpr.hpp"
#include "matlang/synth.hpp"

using namespace matlang;

namespace {

struct Criterion {
  std::string title;
  bool ok = true;
  std::vector<std::string> failures;
  double seconds = 0;

  void expect(bool cond, const std::string& what) {
    if (!cond && failures.size() < 8) failures.push_back(what);
    ok = ok && cond;
  }
};

// --- shared helpers ---

Graph random_graph(std::mt19937& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution edge(p);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

Graph relabelled(std::mt19937& rng, const Graph& g) {
  std::vector<std::size_t> perm(g.order());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return g.relabel(perm);
}

ExactMatrix permutation_witness(const Graph& g, const Graph& h) {
  auto perm = find_isomorphism(g, h);
  ExactMatrix p(g.order(), g.order());
  for (std::size_t u = 0; u < g.order(); ++u) p.at(u, (*perm)[u]) = GaussianRational(1);
  return p;
}

double fmax_norm(const FloatMatrix& m) { return m.max_norm(); }

// T-conjugacy of two evaluation results, by sort: Mat: Rg*T = T*Rh;
// Col: Rg = T*Rh; Row: Rg*T = Rh; Scal: equality.
bool conjugate_exact(const ExactMatrix& rg, const ExactMatrix& rh, const ExactMatrix& t,
                     Sort sort) {
  switch (sort) {
    case Sort::Mat:
      return mat_mul(rg, t) == mat_mul(t, rh);
    case Sort::Col:
      return rg == mat_mul(t, rh);
    case Sort::Row:
      return mat_mul(rg, t) == rh;
    case Sort::Scal:
      return rg == rh;
  }
  return false;
}

double conjugate_residual_float(const FloatMatrix& rg, const FloatMatrix& rh,
                                const FloatMatrix& t, Sort sort) {
  auto diff = [](const FloatMatrix& a, const FloatMatrix& b) { return (a - b).max_norm(); };
  double scale = std::max(1.0, std::max(fmax_norm(rg), fmax_norm(rh)));
  switch (sort) {
    case Sort::Mat:
      return diff(rg * t, t * rh) / scale;
    case Sort::Col:
      return diff(rg, t * rh) / scale;
    case Sort::Row:
      return diff(rg * t, rh) / scale;
    case Sort::Scal:
      return diff(rg, rh) / scale;
  }
  return 0;
}

// Seeded pool of cospectral, fractionally isomorphic pairs built by
// switching-set construction on random regular graphs (the trivial one-part
// partition is common to a cospectral regular pair).
std::vector<std::pair<Graph, Graph>> regular_switching_pairs(std::size_t count,
                                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Graph, Graph>> out;
  auto random_regular = [&rng](std::size_t n, std::size_t k) -> std::optional<Graph> {
    for (int attempt = 0; attempt < 100; ++attempt) {
      std::vector<std::size_t> stubs;
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < k; ++i) stubs.push_back(v);
      std::shuffle(stubs.begin(), stubs.end(), rng);
      Graph g(n);
      bool ok = true;
      for (std::size_t i = 0; ok && i + 1 < stubs.size(); i += 2) {
        std::size_t u = stubs[i], v = stubs[i + 1];
        if (u == v || g.adjacent(u, v))
          ok = false;
        else
          g.add_edge(u, v);
      }
      if (ok) return g;
    }
    return std::nullopt;
  };
  while (out.size() < count) {
    std::size_t n = 8 + rng() % 3;
    std::size_t k = 3 + rng() % (n - 5);
    if (n * k % 2) continue;
    auto base = random_regular(n, k);
    if (!base) continue;
    const Graph& g = *base;
    // Try every 4-subset as a switching set.
    bool used = false;
    std::vector<std::size_t> c(4);
    for (c[0] = 0; c[0] < n && !used; ++c[0])
      for (c[1] = c[0] + 1; c[1] < n && !used; ++c[1])
        for (c[2] = c[1] + 1; c[2] < n && !used; ++c[2])
          for (c[3] = c[2] + 1; c[3] < n && !used; ++c[3]) {
            std::size_t d0 = 0;
            for (std::size_t j : c)
              if (g.adjacent(c[0], j)) ++d0;
            bool good = true;
            std::vector<std::size_t> half;
            for (std::size_t u : c) {
              std::size_t d = 0;
              for (std::size_t j : c)
                if (g.adjacent(u, j)) ++d;
              if (d != d0) good = false;
            }
            for (std::size_t v = 0; good && v < n; ++v) {
              if (std::count(c.begin(), c.end(), v)) continue;
              std::size_t cnt = 0;
              for (std::size_t u : c)
                if (g.adjacent(u, v)) ++cnt;
              if (cnt == 2)
                half.push_back(v);
              else if (cnt != 0 && cnt != 4)
                good = false;
            }
            if (!good || half.empty()) continue;
            Graph h(n);
            for (auto [u, v] : g.edges()) h.add_edge(u, v);
            // complement the edges between the half-type vertices and C
            Graph h2(n);
            for (std::size_t u = 0; u < n; ++u)
              for (std::size_t v = u + 1; v < n; ++v) {
                bool adj = g.adjacent(u, v);
                bool u_in = std::count(c.begin(), c.end(), u) > 0;
                bool v_in = std::count(c.begin(), c.end(), v) > 0;
                bool u_half = std::count(half.begin(), half.end(), u) > 0;
                bool v_half = std::count(half.begin(), half.end(), v) > 0;
                if ((u_in && v_half) || (v_in && u_half)) adj = !adj;
                if (adj) h2.add_edge(u, v);
              }
            if (!cospectral(g, h2)) continue;  // defensive; switching guarantees it
            out.emplace_back(g, h2);
            used = true;
          }
  }
  return out;
}

// --- CLI plumbing ---

std::string cli_path() {
#ifdef MATLANG_CLI_PATH
  return MATLANG_CLI_PATH;
#else
  return "";
#endif
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[512];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_graph_file(const Graph& g, const std::string& name) {
  std::string path = "/tmp/matlang_accept_" + name + ".g6";
  FILE* f = fopen(path.c_str(), "w");
  std::string enc = encode_graph6(g);
  fwrite(enc.data(), 1, enc.size(), f);
  fclose(f);
  return path;
}

// --- criteria ---

void criterion_1(Criterion& c) {
  Graph g = disjoint_union(cycle_graph(4), empty_graph(1));
  Graph h = complete_bipartite(1, 4);
  auto profile = classify(g, h);
  c.expect(profile.rows.at(FragmentId::MulTr).verdict == Verdict::Equivalent,
           "mul-tr verdict not Equivalent");
  c.expect(trace_power_vector(g, 5) == trace_power_vector(h, 5),
           "trace powers k=1..5 differ");
}

void criterion_2(Criterion& c) {
  Graph g = disjoint_union(cycle_graph(4), empty_graph(1));
  Graph h = complete_bipartite(1, 4);
  ExprPtr walk2 = parse("ones(X)' * X * X * ones(X)");
  c.expect(evaluate(*walk2, g.adjacency()) == ExactMatrix::scalar(GaussianRational(16)),
           "walk-2 count on the 4-cycle plus isolated vertex is not 16");
  c.expect(evaluate(*walk2, h.adjacency()) == ExactMatrix::scalar(GaussianRational(20)),
           "walk-2 count on the 4-star is not 20");
  auto profile = classify(g, h);
  const auto& row = profile.rows.at(FragmentId::MulConjOnes);
  c.expect(row.verdict == Verdict::Distinguished, "mul-conj-ones verdict not Distinguished");
  c.expect(row.sentence != nullptr, "mul-conj-ones row carries no sentence");
  if (row.sentence) {
    ExactMatrix vg = evaluate_shared(*row.sentence, g.adjacency());
    ExactMatrix vh = evaluate_shared(*row.sentence, h.adjacency());
    c.expect(vg == ExactMatrix::scalar(GaussianRational(16)) &&
                 vh == ExactMatrix::scalar(GaussianRational(20)),
             "classify sentence does not evaluate to 16 versus 20");
  }
  // CLI smoke check of the same evaluation.
  if (!cli_path().empty()) {
    std::string gp = write_graph_file(g, "c2g"), hp = write_graph_file(h, "c2h");
    auto [code_g, out_g] = run_cli("eval -e \"ones(X)' * X * X * ones(X)\" " + gp);
    auto [code_h, out_h] = run_cli("eval -e \"ones(X)' * X * X * ones(X)\" " + hp);
    c.expect(code_g == 0 && out_g.find("16") != std::string::npos,
             "CLI eval on the first graph did not print 16");
    c.expect(code_h == 0 && out_h.find("20") != std::string::npos,
             "CLI eval on the second graph did not print 20");
    auto [code_gate, out_gate] = run_cli("eval --fragment mul-tr -e \"diag(X*ones(X))\" " + gp);
    c.expect(code_gate == 4, "CLI fragment gate did not exit 4");
  } else {
    c.expect(false, "CLI path not configured");
  }
}

void criterion_3(Criterion& c) {
  CorpusEntry e = load_corpus_entry("g3-h3");
  c.expect(e.conjugacy.has_value(), "no stored conjugacy");
  if (!e.conjugacy) return;
  ExactMatrix ag = e.g.adjacency(), ah = e.h.adjacency();
  c.expect(mat_mul(ag, *e.conjugacy) == mat_mul(*e.conjugacy, ah),
           "stored conjugacy does not intertwine exactly");
  auto w = fractional_isomorphism_witness(e.g, e.h);
  c.expect(w.has_value(), "no regenerated doubly stochastic witness");
  if (w) {
    c.expect(w->witness_class == WitnessClass::DoublyStochastic, "witness class not DS");
    c.expect(validate_witness(*w, ag, ah, 0.0), "regenerated witness failed exact validation");
  }
}

void criterion_4(Criterion& c) {
  ExprPtr e = parse("tr(X*X*X)");
  Graph c6 = cycle_graph(6);
  Graph two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));
  c.expect(evaluate(*e, c6.adjacency()) == ExactMatrix::scalar(GaussianRational(0)),
           "tr(X^3) on the hexagon is not 0");
  c.expect(evaluate(*e, two_c3.adjacency()) == ExactMatrix::scalar(GaussianRational(12)),
           "tr(X^3) on two triangles is not 12");
}

void criterion_5(Criterion& c) {
  ExprPtr count3 = degree_count_sentence(3, 3);
  CorpusEntry e = load_corpus_entry("g4-h4");
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < e.g.order(); ++v)
    max_deg = std::max({max_deg, e.g.degree(v), e.h.degree(v)});
  if (max_deg <= 3) {
    c.expect(evaluate_shared(*count3, e.g.adjacency()) ==
                 ExactMatrix::scalar(GaussianRational(0)),
             "degree-3 count on the recovered first member is not 0");
    c.expect(evaluate_shared(*count3, e.h.adjacency()) ==
                 ExactMatrix::scalar(GaussianRational(1)),
             "degree-3 count on the recovered second member is not 1");
  }
  // Property check regardless: exact degree-3 counting on 100 random graphs
  // of maximum degree 3.
  std::mt19937 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 4 + rng() % 6;
    Graph g(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int tries = 0; tries < 40; ++tries) {
      std::size_t u = pick(rng), v = pick(rng);
      if (u != v && !g.adjacent(u, v) && g.degree(u) < 3 && g.degree(v) < 3) g.add_edge(u, v);
    }
    long direct = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.degree(v) == 3) ++direct;
    c.expect(evaluate_shared(*count3, g.adjacency()) ==
                 ExactMatrix::scalar(GaussianRational(direct)),
             "degree-3 sentence disagrees with direct counting");
  }
}

// Brute-force oracle for criterion 6: does any partition of V(g), equitable
// for g, extend to a common equitable partition by assigning the vertices of
// h to its parts? Enumerates set partitions (order <= 7: at most 877) and
// backtracks over the assignment with size and quotient pruning.
namespace oracle {

using Parts = std::vector<std::vector<std::size_t>>;

bool equitable_quotient(const Graph& g, const Parts& parts,
                        std::vector<std::vector<std::size_t>>& quotient) {
  quotient.assign(parts.size(), std::vector<std::size_t>(parts.size(), 0));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) {
      bool first = true;
      std::size_t expected = 0;
      for (std::size_t v : parts[i]) {
        std::size_t count = 0;
        for (std::size_t u : parts[j])
          if (g.adjacent(v, u)) ++count;
        if (first) {
          expected = count;
          first = false;
        } else if (count != expected) {
          return false;
        }
      }
      quotient[i][j] = expected;
    }
  return true;
}

// Can the vertices of h be assigned to |parts| classes with the given sizes
// so that the result is equitable for h with exactly this quotient?
bool assignable(const Graph& h, const std::vector<std::size_t>& sizes,
                const std::vector<std::vector<std::size_t>>& quotient) {
  std::size_t n = h.order();
  std::vector<std::size_t> assign(n, SIZE_MAX), remaining = sizes;
  // Vertex degree must match the quotient row sum of its class.
  std::vector<std::size_t> row_sum(sizes.size(), 0);
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (std::size_t j = 0; j < sizes.size(); ++j) row_sum[i] += quotient[i][j];
  std::function<bool(std::size_t)> place = [&](std::size_t v) -> bool {
    if (v == n) {
      // Full equitability check of the assignment.
      for (std::size_t u = 0; u < n; ++u) {
        std::vector<std::size_t> counts(sizes.size(), 0);
        for (std::size_t w = 0; w < n; ++w)
          if (h.adjacent(u, w)) ++counts[assign[w]];
        if (counts != quotient[assign[u]]) return false;
      }
      return true;
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (remaining[i] == 0 || h.degree(v) != row_sum[i]) continue;
      // Pruning: v may not already exceed its quotient row against the
      // vertices placed so far.
      bool feasible = true;
      std::vector<std::size_t> counts(sizes.size(), 0);
      for (std::size_t w = 0; w < v; ++w)
        if (h.adjacent(v, w)) ++counts[assign[w]];
      for (std::size_t j = 0; j < sizes.size() && feasible; ++j)
        if (counts[j] > quotient[i][j]) feasible = false;
      if (!feasible) continue;
      assign[v] = i;
      --remaining[i];
      if (place(v + 1)) return true;
      ++remaining[i];
      assign[v] = SIZE_MAX;
    }
    return false;
  };
  return place(0);
}

bool common_equitable_exists(const Graph& g, const Graph& h) {
  std::size_t n = g.order();
  Parts current;
  std::function<bool(std::size_t)> enumerate = [&](std::size_t v) -> bool {
    if (v == n) {
      std::vector<std::vector<std::size_t>> quotient;
      if (!equitable_quotient(g, current, quotient)) return false;
      std::vector<std::size_t> sizes;
      for (const auto& part : current) sizes.push_back(part.size());
      return assignable(h, sizes, quotient);
    }
    for (std::size_t i = 0; i < current.size(); ++i) {
      current[i].push_back(v);
      if (enumerate(v + 1)) return true;
      current[i].pop_back();
    }
    current.push_back({v});
    if (enumerate(v + 1)) return true;
    current.pop_back();
    return false;
  };
  return enumerate(0);
}

}  // namespace oracle

void criterion_6(Criterion& c) {
  std::mt19937 rng(61);
  int disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t n = 2 + rng() % 6;  // orders 2..7
    // Mix related pairs in so both outcomes occur often.
    Graph g = random_graph(rng, n);
    Graph h = trial % 3 == 0 ? relabelled(rng, g) : random_graph(rng, n);
    bool library = common_equitable_partition(g, h).has_value();
    bool brute = oracle::common_equitable_exists(g, h);
    if (library != brute) ++disagreements;
  }
  c.expect(disagreements == 0,
           "library and brute-force oracle disagree on " + std::to_string(disagreements) +
               " of 10000 pairs");
  c.expect(c.seconds < 300.0, "exceeded 5 minutes");  // seconds set by runner before print
}

void criterion_7(Criterion& c) {
  std::mt19937 rng(71);
  const double tol = 1e-8;

  struct ExactGroup {
    std::string fragment;
    std::function<std::tuple<Graph, Graph, ExactMatrix>()> make;
  };
  // Pair+witness factories. Relabelled pairs give permutation (orthogonal)
  // witnesses; common-equitable-partition pairs give doubly stochastic block
  // witnesses (compatible with the matched parts).
  auto relabelled_with_permutation = [&rng]() {
    std::mt19937& r = rng;
    Graph g = random_graph(r, 4 + r() % 4);
    Graph h = relabelled(r, g);
    return std::make_tuple(g, h, permutation_witness(g, h));
  };
  auto cep_with_block_witness = [&rng]() {
    std::mt19937& r = rng;
    while (true) {
      Graph g = random_graph(r, 4 + r() % 4);
      Graph h = relabelled(r, g);
      if (auto w = fractional_isomorphism_witness(g, h)) return std::make_tuple(g, h, *w->exact);
    }
  };
  std::vector<ExactGroup> exact_groups = {
      // multiplication / trace / transpose under an orthogonal witness
      {"mul-tr", [&] { return relabelled_with_permutation(); }},
      // the one-vector under a (doubly) quasi-stochastic witness
      {"mul-conj-ones", [&] { return cep_with_block_witness(); }},
      // diag under a compatible doubly stochastic witness
      {"mul-conj-ones-diag", [&] { return cep_with_block_witness(); }},
  };
  for (const auto& group : exact_groups) {
    Fragment fragment = *fragment_by_name(group.fragment);
    int bad = 0;
    bool col_ok = fragment.contains(OpTag::ones);
    for (int trial = 0; trial < 1000; ++trial) {
      auto [g, h, t] = group.make();
      Sort target = std::array<Sort, 3>{Sort::Mat, Sort::Col, Sort::Scal}[rng() % 3];
      if (target == Sort::Col && !col_ok) target = Sort::Mat;
      ExprPtr e = random_expr(rng, fragment, target, 4);
      ExactMatrix rg = evaluate_shared(*e, g.adjacency());
      ExactMatrix rh = evaluate_shared(*e, h.adjacency());
      if (!conjugate_exact(rg, rh, t, target)) ++bad;
    }
    c.expect(bad == 0, group.fragment + ": " + std::to_string(bad) +
                           "/1000 exact conjugacy failures");
  }

  // Orthogonal doubly quasi-stochastic float witnesses, for the trace+ones
  // fragment and the pointwise-vector fragment.
  auto pool = regular_switching_pairs(6, 73);
  std::vector<std::pair<std::pair<Graph, Graph>, FloatMatrix>> float_pool;
  for (const auto& [g, h] : pool) {
    if (auto w = orthogonal_partition_witness(g, h))
      float_pool.push_back({{g, h}, *w->floating});
  }
  c.expect(!float_pool.empty(), "no float witnesses constructed");
  for (const std::string& name : {std::string("mul-tr-conj-ones"),
                                  std::string("mul-tr-conj-ones-vprod")}) {
    Fragment fragment = *fragment_by_name(name);
    int bad = 0;
    double worst = 0;
    for (int trial = 0; trial < 1000 && !float_pool.empty(); ++trial) {
      const auto& [pair, witness] = float_pool[trial % float_pool.size()];
      Sort target = std::array<Sort, 3>{Sort::Mat, Sort::Col, Sort::Scal}[rng() % 3];
      ExprPtr e = random_expr(rng, fragment, target, 4);
      FloatMatrix rg = evaluate_float(*e, FloatMatrix::from_exact(pair.first.adjacency()));
      FloatMatrix rh = evaluate_float(*e, FloatMatrix::from_exact(pair.second.adjacency()));
      double residual = conjugate_residual_float(rg, rh, witness, target);
      worst = std::max(worst, residual);
      if (residual > tol) ++bad;
    }
    c.expect(bad == 0, name + ": " + std::to_string(bad) +
                           "/1000 float conjugacy residuals above 1e-8 (worst " +
                           std::to_string(worst) + ")");
  }
}

void criterion_8(Criterion& c) {
  std::mt19937 rng(81);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string fragment_name =
        trial % 2 ? "mul-conj-ones-diag" : "mul-tr-conj-ones-vprod";
    Fragment fragment = *fragment_by_name(fragment_name);
    Graph g = random_graph(rng, 3 + rng() % 6);
    ExprPtr e = random_expr(rng, fragment, Sort::Col, 4);
    ExactMatrix value = evaluate_shared(*e, g.adjacency());
    auto cert = coarsest_equitable_partition(g);
    for (const auto& part : cert.partition.parts) {
      for (std::size_t v : part)
        if (!(value.at(v, 0) == value.at(part[0], 0))) {
          ++bad;
          break;
        }
    }
  }
  c.expect(bad == 0, std::to_string(bad) + "/1000 vectors not constant on parts");
}

void criterion_9(Criterion& c) {
  const double tol = 1e-8;
  std::vector<std::pair<Graph, Graph>> pairs;
  pairs.emplace_back(rook_graph_4x4(), shrikhande_graph());
  CorpusEntry g5 = load_corpus_entry("g5-h5"), g6 = load_corpus_entry("g6-h6");
  pairs.emplace_back(g5.g, g5.h);
  pairs.emplace_back(g6.g, g6.h);
  for (auto& p : regular_switching_pairs(17, 91)) pairs.push_back(std::move(p));
  std::mt19937 rng(92);
  while (pairs.size() < 50) {
    Graph g = random_graph(rng, 5 + rng() % 6);
    pairs.emplace_back(g, relabelled(rng, g));
  }
  int done = 0;
  for (const auto& [g, h] : pairs) {
    if (!cospectral_plus_cep(g, h)) {
      c.expect(false, "a pool pair is not cospectral + fractionally isomorphic");
      continue;
    }
    std::optional<ConjugacyWitness> w;
    try {
      w = orthogonal_partition_witness(g, h, tol);
    } catch (const EigenvaluePairingFailure&) {
      c.expect(false, "eigenvalue pairing failed on a pool pair");
      continue;
    }
    if (!w || !w->floating) {
      c.expect(false, "no orthogonal witness for a pool pair");
      continue;
    }
    const FloatMatrix& o = *w->floating;
    FloatMatrix ag = FloatMatrix::from_exact(g.adjacency());
    FloatMatrix ah = FloatMatrix::from_exact(h.adjacency());
    double orth = (o.transpose() * o - FloatMatrix::identity(o.rows())).max_norm();
    double conj = (ag * o - o * ah).max_norm();
    c.expect(orth < tol, "|O^T O - I| = " + std::to_string(orth));
    c.expect(conj < tol, "|A_g O - O A_h| = " + std::to_string(conj));
    // Exact partition preservation after rounding: O * 1_{W_i} = 1_{V_i}.
    c.expect(w->partitions.has_value(), "witness carries no matched partitions");
    if (w->partitions) {
      const auto& cep = *w->partitions;
      for (std::size_t i = 0; i < cep.g_cert.partition.parts.size(); ++i) {
        ExactMatrix wi = cep.h_cert.partition.indicator(i);
        ExactMatrix vi = cep.g_cert.partition.indicator(i);
        FloatMatrix image = o * FloatMatrix::from_exact(wi);
        double err = (image - FloatMatrix::from_exact(vi)).max_norm();
        // rounding to the nearest integer must reproduce the indicator
        c.expect(err < 0.5 && err < tol * 10, "partition preservation residual " +
                                                  std::to_string(err));
      }
    }
    ++done;
  }
  c.expect(done == 50, "only " + std::to_string(done) + "/50 pairs verified");
}

void criterion_10(Criterion& c) {
  CorpusEntry e = load_corpus_entry("g6-h6");
  c.expect(cospectral_plus_cep(e.g, e.h), "pair not cospectral + fractionally isomorphic");
  auto verdict = specht_semidecider(e.g, e.h, 6, 200);
  c.expect(verdict.distinguished, "trace-word decider found no distinguishing word");
  c.expect(verdict.distinguished && verdict.value_g != verdict.value_h,
           "distinguishing word traces are equal");
  auto lg = laplacian_invariants(e.g), lh = laplacian_invariants(e.h);
  c.expect(lg.spanning_trees != lh.spanning_trees, "spanning-tree counts agree");
  c.expect(lg.trace_powers[3] != lh.trace_powers[3], "tr(L^4) agrees");
  // The Laplacian-trace sentence the word realizes lives in the diag
  // fragment, and the first Laplacian trace power able to differ is 4.
  c.expect(lg.trace_powers[0] == lh.trace_powers[0] &&
               lg.trace_powers[1] == lh.trace_powers[1] &&
               lg.trace_powers[2] == lh.trace_powers[2],
           "tr(L^k), k <= 3 should be forced equal for this pair");
  // Both predicates of criterion 9 hold on the pair.
  auto w = orthogonal_partition_witness(e.g, e.h, 1e-8);
  c.expect(w.has_value(), "no orthogonal witness on the pair");
}

void criterion_11(Criterion& c) {
  Graph rook = rook_graph_4x4(), shri = shrikhande_graph();
  c.expect(!find_isomorphism(rook, shri).has_value(), "graphs reported isomorphic");
  c.expect(wl2_equivalent(rook, shri).equivalent, "stable edge partitions differ");
  auto profile = classify(rook, shri);
  for (const auto& [fragment, row] : profile.rows)
    c.expect(row.verdict == Verdict::Equivalent,
             fragment_id_name(fragment) + " verdict not Equivalent");
  c.expect(c.seconds < 30.0, "exceeded 30 seconds");
}

void criterion_12(Criterion& c) {
  std::mt19937 rng(121);
  std::vector<std::pair<Graph, Graph>> pairs;
  for (const auto& e : load_corpus()) pairs.emplace_back(e.g, e.h);
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 2 + rng() % 5;  // orders 2..6
    Graph g = random_graph(rng, n);
    Graph h = i % 2 ? relabelled(rng, g) : random_graph(rng, n);
    pairs.emplace_back(std::move(g), std::move(h));
  }
  int bad_sentences = 0;
  std::vector<std::pair<std::size_t, FragmentId>> equivalent_rows;  // pair index, fragment
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [g, h] = pairs[i];
    auto profile = classify(g, h);
    for (const auto& [fragment, row] : profile.rows) {
      if (row.verdict == Verdict::Distinguished) {
        if (!row.sentence) {
          ++bad_sentences;
          continue;
        }
        if (!fragment_check(*row.sentence, fragment_of(fragment)).ok) ++bad_sentences;
        if (evaluate_shared(*row.sentence, g.adjacency()) ==
            evaluate_shared(*row.sentence, h.adjacency()))
          ++bad_sentences;
      } else if (row.verdict == Verdict::Equivalent && g.order() <= 6) {
        equivalent_rows.emplace_back(i, fragment);
      }
    }
  }
  c.expect(bad_sentences == 0,
           std::to_string(bad_sentences) + " distinguishing sentences failed verification");
  c.expect(!equivalent_rows.empty(), "no Equivalent verdicts on order <= 6 to cross-check");
  // A pool of 1000 generated fragment sentences, spread round-robin over the
  // Equivalent rows, must evaluate equal.
  int unequal = 0;
  for (int k = 0; k < 1000 && !equivalent_rows.empty(); ++k) {
    auto [idx, fragment] = equivalent_rows[k % equivalent_rows.size()];
    ExprPtr sentence = random_sentence(rng, fragment_of(fragment), 4);
    const auto& [g, h] = pairs[idx];
    if (!(evaluate_shared(*sentence, g.adjacency()) ==
          evaluate_shared(*sentence, h.adjacency())))
      ++unequal;
  }
  c.expect(unequal == 0,
           std::to_string(unequal) + "/1000 pooled sentences evaluated unequal");
}

void criterion_13(Criterion& c) {
  std::mt19937 rng(131);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + rng() % 11;  // orders 2..12
    Graph g = random_graph(rng, n);
    try {
      coherent_basis_check(stable_edge_partition(g));
    } catch (const StabilityViolation&) {
      ++bad;
    }
  }
  c.expect(bad == 0, std::to_string(bad) + "/1000 stable partitions failed the check");
}

}  // namespace

int main() {
  struct Entry {
    std::string title;
    void (*run)(Criterion&);
  };
  const std::vector<Entry> criteria = {
      {"cospectrality of the landmark order-5 pair (exact, < 1 s)", criterion_1},
      {"walk-2 separation 16 versus 20, library and CLI (exact)", criterion_2},
      {"explicit conjugacy and regenerated doubly stochastic witness (exact)", criterion_3},
      {"closed-walk separation tr(X^3) = 0 versus 12 (exact)", criterion_4},
      {"degree-3 extraction: recovered pair and 100 random graphs (exact)", criterion_5},
      {"colour-refinement oracle agreement on 10^4 pairs of order <= 7 (exact, < 5 min)",
       criterion_6},
      {"conjugation preservation, 1000 triples per witness group (exact / 1e-8)", criterion_7},
      {"partition-constant vectors, 1000 random column expressions (exact)", criterion_8},
      {"orthogonal witnesses on 50 cospectral fractionally-isomorphic pairs (1e-8)",
       criterion_9},
      {"trace-word separation on the common-partition pair (exact)", criterion_10},
      {"rook versus Shrikhande: equivalent everywhere, not isomorphic (< 30 s)", criterion_11},
      {"sentence/decider cross-validation over corpus and 1000 random pairs (exact)",
       criterion_12},
      {"coherent-algebra stability on 1000 stable partitions (exact)", criterion_13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c{criteria[i].title};
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.title.find("< 5 min") != std::string::npos)
      c.expect(c.seconds < 300.0, "exceeded 5 minutes");
    if (c.title.find("< 30 s") != std::string::npos)
      c.expect(c.seconds < 30.0, "exceeded 30 seconds");
    if (c.title.find("< 1 s") != std::string::npos)
      c.expect(c.seconds < 1.0, "exceeded 1 second");
    std::printf("criterion %2zu %s (%.2fs): %s\n", i + 1, c.ok ? "PASS" : "FAIL", c.seconds,
                c.title.c_str());
    for (const auto& f : c.failures) std::printf("              - %s\n", f.c_str());
    if (!c.ok) ++failed;
  }
  if (failed) std::printf("%d criteria FAILED\n", failed);
  return failed == 0 ? 0 : 1;
}
