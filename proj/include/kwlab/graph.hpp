#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"

namespace kwlab {

// Undirected simple graph on up to 32 vertices, adjacency stored as bitmasks.
struct SimpleGraph {
  int n = 0;
  std::vector<std::uint32_t> adj;

  SimpleGraph() = default;
  explicit SimpleGraph(int n_) : n(n_), adj(n_, 0) {
    if (n_ < 0 || n_ > 32) throw std::invalid_argument("SimpleGraph: 0 <= n <= 32 required");
  }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("SimpleGraph: self loop");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("SimpleGraph: vertex range");
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }

  bool has_edge(int u, int v) const { return (adj[u] >> v) & 1; }

  int edge_count() const {
    int total = 0;
    for (int u = 0; u < n; ++u) total += popcount64(adj[u]);
    return total / 2;
  }

  SimpleGraph complement() const {
    SimpleGraph H(n);
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (int u = 0; u < n; ++u) H.adj[u] = ~adj[u] & full & ~(1u << u);
    return H;
  }
};

namespace detail {

// Max clique by branch and bound on candidate masks.
inline void clique_search(const SimpleGraph& G, std::uint32_t cand, int depth, int& best) {
  if (depth + popcount64(cand) <= best) return;
  while (cand) {
    if (depth + popcount64(cand) <= best) return;
    int v = __builtin_ctz(cand);
    cand &= ~(1u << v);
    int sub = depth + 1;
    std::uint32_t next = cand & G.adj[v];
    if (next == 0) {
      best = std::max(best, sub);
    } else {
      if (sub > best) best = std::max(best, sub);
      clique_search(G, next, sub, best);
    }
  }
}

inline bool color_search(const SimpleGraph& G, std::vector<int>& color, int k) {
  // DSATUR-style: pick the uncolored vertex with the most distinct
  // neighboring colors, break ties by degree.
  int pick = -1, best_sat = -1, best_deg = -1;
  for (int v = 0; v < G.n; ++v) {
    if (color[v] >= 0) continue;
    std::uint32_t used = 0;
    for (int u = 0; u < G.n; ++u)
      if (G.has_edge(u, v) && color[u] >= 0) used |= 1u << color[u];
    int sat = popcount64(used), deg = popcount64(G.adj[v]);
    if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
      pick = v;
      best_sat = sat;
      best_deg = deg;
    }
  }
  if (pick < 0) return true;
  std::uint32_t used = 0;
  int max_used = -1;
  for (int u = 0; u < G.n; ++u)
    if (G.has_edge(u, pick) && color[u] >= 0) used |= 1u << color[u];
  for (int v = 0; v < G.n; ++v) max_used = std::max(max_used, color[v]);
  // Allow at most one brand-new color to avoid symmetric permutations.
  int limit = std::min(k - 1, max_used + 1);
  for (int c = 0; c <= limit; ++c) {
    if ((used >> c) & 1) continue;
    color[pick] = c;
    if (color_search(G, color, k)) return true;
    color[pick] = -1;
  }
  return false;
}

}  // namespace detail

inline int clique_number(const SimpleGraph& G) {
  if (G.n == 0) return 0;
  int best = 0;
  std::uint32_t full = (G.n == 32) ? ~0u : ((1u << G.n) - 1);
  detail::clique_search(G, full, 0, best);
  return best;
}

inline int independence_number(const SimpleGraph& G) { return clique_number(G.complement()); }

inline bool is_k_colorable(const SimpleGraph& G, int k) {
  if (G.n == 0) return true;
  if (k <= 0) return false;
  std::vector<int> color(G.n, -1);
  return detail::color_search(G, color, k);
}

inline int chromatic_number(const SimpleGraph& G) {
  if (G.n == 0) return 0;
  int lo = std::max(1, clique_number(G));
  for (int k = lo; k <= G.n; ++k)
    if (is_k_colorable(G, k)) return k;
  return G.n;
}

// Edge-list text format: first non-comment line "n", then "u v" pairs
// (0-based). Lines starting with '#' are skipped.
inline SimpleGraph parse_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  SimpleGraph G;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    if (n < 0) {
      if (ls >> n) G = SimpleGraph(n);
      continue;
    }
    int u, v;
    if (ls >> u >> v) G.add_edge(u, v);
  }
  if (n < 0) throw std::invalid_argument("parse_edge_list: no vertex count");
  return G;
}

// graph6 format (single line, n <= 62 supported here).
inline SimpleGraph parse_graph6(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_graph6: empty");
  std::size_t pos = 0;
  if (s.compare(0, 10, ">>graph6<<") == 0) pos = 10;
  int n = s[pos] - 63;
  if (n < 0 || n > 32) throw std::invalid_argument("parse_graph6: unsupported vertex count");
  ++pos;
  SimpleGraph G(n);
  int bit = 0;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      std::size_t byte = pos + bit / 6;
      if (byte >= s.size()) throw std::invalid_argument("parse_graph6: truncated");
      int b = (s[byte] - 63) >> (5 - bit % 6) & 1;
      if (b) G.add_edge(u, v);
      ++bit;
    }
  return G;
}

inline SimpleGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_graph: cannot open " + path);
  std::string first;
  std::getline(in, first);
  // Heuristic: a graph6 line has no spaces and starts past the ASCII digits.
  bool g6 = !first.empty() && first.find(' ') == std::string::npos &&
            (first[0] > '9' || first.compare(0, 2, ">>") == 0);
  if (g6) return parse_graph6(first);
  in.clear();
  in.seekg(0);
  return parse_edge_list(in);
}

}  // namespace kwlab
