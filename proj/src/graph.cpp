#include "matlang/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace matlang {

Graph::Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw Error("edge endpoint out of range");
  if (u == v) throw Error("self-loops are not allowed");
  adj_[u * n_ + v] = 1;
  adj_[v * n_ + u] = 1;
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n_; ++u) d += adj_[v * n_ + u];
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

ExactMatrix Graph::adjacency() const {
  ExactMatrix a(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (adjacent(i, j)) a.at(i, j) = GaussianRational(1);
  return a;
}

ExactMatrix Graph::laplacian() const {
  ExactMatrix l(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    l.at(i, i) = GaussianRational(static_cast<long>(degree(i)));
    for (std::size_t j = 0; j < n_; ++j)
      if (adjacent(i, j)) l.at(i, j) = GaussianRational(-1);
  }
  return l;
}

Graph Graph::relabel(const std::vector<std::size_t>& perm) const {
  Graph out(n_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.add_edge(perm[u], perm[v]);
  return out;
}

// --- generators ---

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  if (n < 3) throw Error("cycles need at least 3 vertices");
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph petersen_graph() {
  Graph g(10);
  for (std::size_t v = 0; v < 5; ++v) {
    g.add_edge(v, (v + 1) % 5);          // outer 5-cycle
    g.add_edge(5 + v, 5 + (v + 2) % 5);  // inner pentagram
    g.add_edge(v, 5 + v);                // spokes
  }
  return g;
}

Graph rook_graph_4x4() {
  // Vertices are board cells (r,c); adjacency = same row or same column.
  Graph g(16);
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = a + 1; b < 16; ++b)
      if (a / 4 == b / 4 || a % 4 == b % 4) g.add_edge(a, b);
  return g;
}

Graph shrikhande_graph() {
  // Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
  Graph g(16);
  const int diffs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (const auto& d : diffs) {
        int u = x * 4 + y;
        int v = ((x + d[0]) % 4) * 4 + (y + d[1]) % 4;
        if (u != v) g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      }
  return g;
}

Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  Graph out(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.order() + h.order());
  for (const auto& [u, v] : g.edges()) out.add_edge(u, v);
  for (const auto& [u, v] : h.edges()) out.add_edge(g.order() + u, g.order() + v);
  return out;
}

// --- graph6 ---

Graph parse_graph6(const std::string& text) {
  std::string s = text;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  if (s.empty()) throw FormatError("empty graph6 string", 0);
  std::size_t pos = 0;
  auto next6 = [&]() -> unsigned {
    if (pos >= s.size()) throw FormatError("truncated graph6 string", pos);
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw FormatError("invalid graph6 byte", pos);
    ++pos;
    return c - 63u;
  };
  std::size_t n;
  unsigned first = next6();
  if (first < 63) {
    n = first;
  } else {
    unsigned a = next6();
    if (a == 63) throw FormatError("graph6 orders above 258047 are unsupported", pos);
    n = (static_cast<std::size_t>(a) << 12) | (next6() << 6) | next6();
  }
  if (n == 0) throw FormatError("graph6 order 0 is unsupported", 0);
  Graph g(n);
  unsigned buffer = 0;
  int bits = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (bits == 0) {
        buffer = next6();
        bits = 6;
      }
      --bits;
      if ((buffer >> bits) & 1u) g.add_edge(i, j);
    }
  if (pos != s.size()) throw FormatError("trailing bytes after graph6 payload", pos);
  return g;
}

std::string encode_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  unsigned buffer = 0;
  int bits = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      buffer = (buffer << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++bits == 6) {
        out.push_back(static_cast<char>(buffer + 63));
        buffer = 0;
        bits = 0;
      }
    }
  if (bits > 0) out.push_back(static_cast<char>((buffer << (6 - bits)) + 63));
  return out;
}

Graph parse_edge_list_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw FormatError("missing integer field \"n\"", 0);
  long n = j["n"].get<long>();
  if (n < 1) throw FormatError("graph order must be >= 1", 0);
  Graph g(static_cast<std::size_t>(n));
  for (const auto& e : j.value("edges", nlohmann::json::array())) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edges must be pairs", 0);
    long u = e[0].get<long>(), v = e[1].get<long>();
    if (u < 1 || u > n || v < 1 || v > n) throw FormatError("edge endpoint out of range", 0);
    g.add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return parse_edge_list_json(buf.str());
  return parse_graph6(buf.str());
}

// --- isomorphism ---

namespace {

// Per-vertex invariant: (degree, number of edges inside the open
// neighborhood). The latter separates e.g. the two srg(16,6,2,2) graphs,
// whose vertex neighborhoods are 2K3 vs C6.
std::vector<std::pair<std::size_t, std::size_t>> vertex_invariants(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::pair<std::size_t, std::size_t>> inv(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nbrs;
    for (std::size_t u = 0; u < n; ++u)
      if (g.adjacent(v, u)) nbrs.push_back(u);
    std::size_t inner = 0;
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b)
        if (g.adjacent(nbrs[a], nbrs[b])) ++inner;
    inv[v] = {nbrs.size(), inner};
  }
  return inv;
}

bool extend_isomorphism(const Graph& g, const Graph& h,
                        const std::vector<std::vector<std::size_t>>& candidates,
                        std::vector<std::size_t>& map, std::vector<bool>& used,
                        std::size_t v) {
  const std::size_t n = g.order();
  if (v == n) return true;
  for (std::size_t w : candidates[v]) {
    if (used[w]) continue;
    bool ok = true;
    for (std::size_t u = 0; u < v && ok; ++u)
      if (g.adjacent(v, u) != h.adjacent(w, map[u])) ok = false;
    if (!ok) continue;
    map[v] = w;
    used[w] = true;
    if (extend_isomorphism(g, h, candidates, map, used, v + 1)) return true;
    used[w] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g, const Graph& h) {
  const std::size_t n = g.order();
  if (n != h.order() || g.edge_count() != h.edge_count()) return std::nullopt;
  auto ig = vertex_invariants(g);
  auto ih = vertex_invariants(h);
  auto sg = ig, sh = ih;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return std::nullopt;
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (ig[v] == ih[w]) candidates[v].push_back(w);
  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  if (extend_isomorphism(g, h, candidates, map, used, 0)) return map;
  return std::nullopt;
}

bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace matlang
