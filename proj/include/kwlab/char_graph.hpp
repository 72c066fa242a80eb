#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kwlab/graph.hpp"
#include "kwlab/prefix_thick.hpp"
#include "kwlab/rect_game.hpp"
#include "kwlab/transcript.hpp"

namespace kwlab {

// Graph on the surviving inner functions of a transcript context; adjacency
// comes from intersecting consistency sets.
struct CharGraph {
  std::vector<std::uint64_t> vertices;  // g.bits, sorted
  std::vector<std::vector<char>> adj;

  bool has_edge(std::size_t i, std::size_t j) const { return adj[i][j] != 0; }

  int edge_count() const {
    int total = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j) total += adj[i][j] ? 1 : 0;
    return total;
  }

  SimpleGraph to_simple() const {
    if (vertices.size() > 32) throw BudgetExceeded("CharGraph::to_simple: > 32 vertices");
    SimpleGraph G((int)vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (adj[i][j]) G.add_edge((int)i, (int)j);
    return G;
  }

  CharGraph induced(const std::vector<std::uint64_t>& keep) const {
    std::set<std::uint64_t> want(keep.begin(), keep.end());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (want.count(vertices[i])) idx.push_back(i);
    CharGraph H;
    for (auto i : idx) H.vertices.push_back(vertices[i]);
    H.adj.assign(idx.size(), std::vector<char>(idx.size(), 0));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) H.adj[i][j] = adj[idx[i]][idx[j]];
    return H;
  }
};

// X and Y agree on every row where the induced column vectors differ.
inline bool weak_intersection(int m, int n, const TruthTable& gA, std::uint64_t xkey,
                              const TruthTable& gB, std::uint64_t ykey) {
  BooleanMatrix X = BooleanMatrix::from_key(m, n, xkey);
  BooleanMatrix Y = BooleanMatrix::from_key(m, n, ykey);
  std::uint32_t a = apply_rowwise(gA, X).bits, b = apply_rowwise(gB, Y).bits;
  for (int i = 0; i < m; ++i)
    if (((a ^ b) >> (m - 1 - i)) & 1)
      if (X.row(i) != Y.row(i)) return false;
  return true;
}

namespace detail {

inline bool keys_intersect(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b) {
  std::set<std::uint64_t> s(a.begin(), a.end());
  for (auto k : b)
    if (s.count(k)) return true;
  return false;
}

}  // namespace detail

// Standard adjacency: the X-set of one function meets the Y-set of the other.
// Strong adjacency: some (X, Y) pair, in either role assignment, has the weak
// intersection property.
inline CharGraph char_graph(const TranscriptContext& ctx, bool strong) {
  if (ctx.V.size() > 128) throw BudgetExceeded("char_graph: |V_pi| > 128");
  CharGraph G;
  G.vertices = ctx.V;
  std::sort(G.vertices.begin(), G.vertices.end());
  const std::size_t k = G.vertices.size();
  G.adj.assign(k, std::vector<char>(k, 0));
  auto pair_adj = [&](std::uint64_t ga, std::uint64_t gb) {
    const auto& Xa = ctx.X.at(ga);
    const auto& Yb = ctx.Y.at(gb);
    if (!strong) return detail::keys_intersect(Xa, Yb);
    TruthTable tA(ctx.n, ga), tB(ctx.n, gb);
    for (auto xk : Xa)
      for (auto yk : Yb)
        if (weak_intersection(ctx.m, ctx.n, tA, xk, tB, yk)) return true;
    return false;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (pair_adj(G.vertices[i], G.vertices[j]) || pair_adj(G.vertices[j], G.vertices[i]))
        G.adj[i][j] = G.adj[j][i] = 1;
  return G;
}

struct ChromaticBoundReport {
  int chi = 0;
  int depth = 0;
  std::size_t pi_len = 0;
  double clamp_term = 0;  // max(0, loglog chi - logloglog chi - 4)
  double rhs = 0;
  bool vacuous = false;
  bool holds = false;
};

// depth >= |pi1| + loglog(chi) - logloglog(chi) - 4, with the additive term
// clamped at 0 (chi <= 2 makes the bound say nothing).
inline ChromaticBoundReport verify_chromatic_bound(const HDProtocol& P, const Relation& R,
                                                   const std::vector<int>& pi1, bool strong) {
  TranscriptContext ctx = derive_context(P, R, pi1);
  CharGraph G = char_graph(ctx, strong);
  ChromaticBoundReport rep;
  rep.chi = (G.vertices.empty()) ? 0 : chromatic_number(G.to_simple());
  rep.depth = P.depth;
  rep.pi_len = pi1.size();
  if (rep.chi > 2) {
    double ll = std::log2(std::log2((double)rep.chi));
    double term = ll - (ll > 0 ? std::log2(ll) : 0.0) - 4.0;
    rep.clamp_term = std::max(0.0, term);
  }
  rep.vacuous = rep.clamp_term <= 0;
  rep.rhs = (double)rep.pi_len + rep.clamp_term;
  rep.holds = rep.depth + 1e-9 >= rep.rhs;
  return rep;
}

namespace detail {

// X(g,a) as strings over the per-row alphabets g^{-1}(a_i) (dense indices,
// common size 2^{n-1} for balanced g).
inline StringSet matrices_as_strings(const std::vector<std::uint64_t>& keys,
                                     const TruthTable& g, std::uint32_t a, int m) {
  const int n = g.arity;
  AlphabetProfile prof(m, 1 << (n - 1));
  std::vector<std::map<std::uint32_t, int>> index(m);
  for (int i = 0; i < m; ++i) {
    auto alpha = g.preimage((a >> (m - 1 - i)) & 1);
    for (std::size_t s = 0; s < alpha.size(); ++s) index[i][alpha[s]] = (int)s;
  }
  std::vector<Str> out;
  for (auto key : keys) {
    BooleanMatrix X = BooleanMatrix::from_key(m, n, key);
    Str w(m);
    for (int i = 0; i < m; ++i) w[i] = index[i].at(X.row(i));
    out.push_back(w);
  }
  return StringSet(prof, out);
}

inline std::vector<int> mask_coords(std::uint32_t I, int m) {
  std::vector<int> coords;
  for (int i = 0; i < m; ++i)
    if ((I >> i) & 1) coords.push_back(i);
  return coords;
}

// Rows where the column vectors differ, as a coordinate mask (bit i = row i;
// column vectors store row i at bit m-1-i).
inline std::uint32_t row_diff_mask(std::uint32_t a, std::uint32_t b, int m) {
  std::uint32_t out = 0;
  for (int i = 0; i < m; ++i)
    if (((a ^ b) >> (m - 1 - i)) & 1) out |= 1u << i;
  return out;
}

}  // namespace detail

struct GprimePerG {
  bool ok = false;
  std::string fail;
  std::uint32_t I = 0;
  std::uint32_t a = 0, b = 0;
  int l_a1b1 = 0;          // L(A1 x B1), for the no-pair diagnostic
  double pair_threshold = 0;
};

struct GprimeResult {
  bool ok = false;
  std::string failure;
  std::vector<std::uint64_t> Vprime;
  std::uint32_t I = 0, a = 0, b = 0;
  std::size_t successes = 0, distinct_triplets = 0;
  bool size_bullet = false;   // |V'| * #distinct >= #successes
  bool agree_bullet = false;  // a and b agree outside I
  bool thick_bullet = false;  // projected consistency sets are prefix thick
  CharGraph graph;
  std::map<std::uint64_t, GprimePerG> per_g;
};

// Runs the sub-graph construction pipeline for every function in V, then
// keeps the functions sharing the most popular (I, a, b) triplet. Stages:
// fortify the column vectors on Alice's side, pick a projection set that is
// thick for many vectors, repeat on Bob's side inside the chosen set, and
// find a vector pair agreeing outside it.
inline GprimeResult build_Gprime(const TranscriptContext& ctx,
                                 const std::vector<std::uint64_t>& V, const LiveParams& p,
                                 SearchBudget budget = {}) {
  const int m = ctx.m, n = ctx.n;
  const std::uint32_t fullm = (1u << m) - 1;
  const double rho = 1.0 / (4.0 * m);
  const double thick_deg = (0.5 + p.eps) * (1 << (n - 1));
  GprimeResult res;

  for (auto gbits : V) {
    TruthTable g(n, gbits);
    GprimePerG pg;
    if (!g.is_balanced()) throw std::invalid_argument("build_Gprime: unbalanced function");
    const auto& A = ctx.A.at(gbits);
    const auto& B = ctx.B.at(gbits);
    auto a0 = find_fortified_subset(A, B, m, rho, budget).subset;

    // Projection sets that are thick for each surviving a, filtered by size.
    auto thick_family = [&](const std::vector<std::uint64_t>& keys, std::uint32_t val,
                            double min_size, std::uint32_t within) {
      StringSet S = detail::matrices_as_strings(keys, g, val, m);
      std::set<std::uint32_t> fam;
      for (auto I : thick_projections(S, p.eps).family)
        if ((I & ~within) == 0 && popcount64(I) + 1e-9 >= min_size) fam.insert(I);
      return fam;
    };

    std::map<std::uint32_t, std::set<std::uint32_t>> Fa;
    for (auto a : a0) Fa[a] = thick_family(ctx.X_of(gbits, a), a, (0.5 - p.beta) * m, fullm);
    std::uint32_t I1 = 0;
    std::size_t best = 0;
    for (std::uint32_t I = 0; I <= fullm; ++I) {
      std::size_t cnt = 0;
      for (const auto& [a, fam] : Fa) cnt += fam.count(I);
      if (cnt > best) {
        best = cnt;
        I1 = I;
      }
    }
    if (best == 0) {
      pg.fail = "no large thick projection set on Alice's side";
      res.per_g[gbits] = pg;
      continue;
    }
    std::vector<std::uint32_t> A1;
    for (const auto& [a, fam] : Fa)
      if (fam.count(I1)) A1.push_back(a);

    auto b0 = find_fortified_subset(B, A1, m, rho, budget).subset;
    std::map<std::uint32_t, std::set<std::uint32_t>> Fb;
    double min_size_b = (0.5 - p.beta) * popcount64(I1);
    for (auto b : b0) Fb[b] = thick_family(ctx.Y_of(gbits, b), b, min_size_b, I1);
    std::uint32_t Ig = 0;
    best = 0;
    for (std::uint32_t I = 0; I <= I1; ++I) {
      if ((I & ~I1) != 0) continue;
      std::size_t cnt = 0;
      for (const auto& [b, fam] : Fb) cnt += fam.count(I);
      if (cnt > best) {
        best = cnt;
        Ig = I;
      }
    }
    if (best == 0) {
      pg.fail = "no large thick projection set on Bob's side";
      res.per_g[gbits] = pg;
      continue;
    }
    std::vector<std::uint32_t> B1;
    for (const auto& [b, fam] : Fb)
      if (fam.count(Ig)) B1.push_back(b);

    pg.l_a1b1 = formula_complexity_rect(A1, B1, m, budget).size;
    pg.pair_threshold = std::exp2((double)(m - popcount64(Ig)) + std::log2((double)m));
    bool found = false;
    for (auto a : A1) {
      for (auto b : B1)
        if ((detail::row_diff_mask(a, b, m) & ~Ig) == 0) {
          pg.I = Ig;
          pg.a = a;
          pg.b = b;
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) {
      pg.fail = "no vector pair agrees outside the projection set (L(A1 x B1) = " +
                std::to_string(pg.l_a1b1) + " vs threshold " +
                std::to_string(pg.pair_threshold) + ")";
      res.per_g[gbits] = pg;
      continue;
    }
    pg.ok = true;
    res.per_g[gbits] = pg;
  }

  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
           std::vector<std::uint64_t>> by_triplet;
  for (const auto& [gbits, pg] : res.per_g)
    if (pg.ok) by_triplet[{pg.I, pg.a, pg.b}].push_back(gbits);
  res.successes = 0;
  for (const auto& [t, gs] : by_triplet) res.successes += gs.size();
  res.distinct_triplets = by_triplet.size();
  if (by_triplet.empty()) {
    res.failure = "pipeline failed for every function";
    return res;
  }
  for (const auto& [t, gs] : by_triplet)
    if (gs.size() > res.Vprime.size()) {
      res.Vprime = gs;
      std::tie(res.I, res.a, res.b) = t;
    }
  std::sort(res.Vprime.begin(), res.Vprime.end());

  res.size_bullet = res.Vprime.size() * res.distinct_triplets >= res.successes;
  res.agree_bullet = (detail::row_diff_mask(res.a, res.b, m) & ~res.I) == 0;
  res.thick_bullet = true;
  auto coords = detail::mask_coords(res.I, m);
  for (auto gbits : res.Vprime) {
    TruthTable g(n, gbits);
    StringSet Xs = detail::matrices_as_strings(ctx.X_of(gbits, res.a), g, res.a, m);
    StringSet Ys = detail::matrices_as_strings(ctx.Y_of(gbits, res.b), g, res.b, m);
    if (!is_prefix_thick(project(Xs, coords), thick_deg).thick ||
        !is_prefix_thick(project(Ys, coords), thick_deg).thick)
      res.thick_bullet = false;
  }
  res.graph = char_graph(ctx, true).induced(res.Vprime);
  res.ok = res.size_bullet && res.agree_bullet && res.thick_bullet;
  if (!res.ok) res.failure = "output bullet failed";
  return res;
}

struct PairEventsReport {
  bool e1 = false, e2 = false, e3 = false;
  bool all_events = false;
  bool intersect = false;
  bool implication_ok = false;  // all events => nonempty intersection
  std::vector<int> alphabet_sizes;  // |g_A^{-1}(a_i) cap g_B^{-1}(b_i)| per coordinate
};

// The three-event check on a coordinate set I: small intersected alphabets,
// and both projected sets thick inside the other function's preimage. When
// all three hold the sets must share a string; both facts are evaluated
// deterministically. Strings in Xs and Ys carry raw n-bit row values on the
// coordinates of I in ascending order.
inline PairEventsReport check_pair_events(const TruthTable& gA, const TruthTable& gB,
                                          std::uint32_t a, std::uint32_t b, std::uint32_t I,
                                          const std::vector<std::vector<std::uint32_t>>& Xs,
                                          const std::vector<std::vector<std::uint32_t>>& Ys,
                                          double eps, int m) {
  const int n = gA.arity;
  if (!gA.is_balanced() || !gB.is_balanced())
    throw std::invalid_argument("check_pair_events: unbalanced function");
  auto coords = detail::mask_coords(I, m);
  const std::size_t k = coords.size();

  PairEventsReport rep;
  double cap1 = (1.0 + eps / 2.0) * (1 << (n - 2));
  rep.e1 = true;
  std::vector<std::set<std::uint32_t>> pre_a(k), pre_b(k), common(k);
  for (std::size_t c = 0; c < k; ++c) {
    int i = coords[c];
    for (auto v : gA.preimage((a >> (m - 1 - i)) & 1)) pre_a[c].insert(v);
    for (auto v : gB.preimage((b >> (m - 1 - i)) & 1)) pre_b[c].insert(v);
    for (auto v : pre_a[c])
      if (pre_b[c].count(v)) common[c].insert(v);
    rep.alphabet_sizes.push_back((int)common[c].size());
    if ((double)common[c].size() > cap1 + 1e-9) rep.e1 = false;
  }

  // Dense per-coordinate indexing over the union of both preimages.
  std::vector<std::map<std::uint32_t, int>> index(k);
  int q = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::set<std::uint32_t> uni = pre_a[c];
    uni.insert(pre_b[c].begin(), pre_b[c].end());
    int s = 0;
    for (auto v : uni) index[c][v] = s++;
    q = std::max(q, s);
  }
  q = std::max(q, 1);
  auto encode = [&](const std::vector<std::vector<std::uint32_t>>& raw,
                    const std::vector<std::set<std::uint32_t>>& filter) {
    std::vector<Str> out;
    for (const auto& w : raw) {
      if (w.size() != k) throw std::invalid_argument("check_pair_events: string length");
      bool keep = true;
      Str enc(k);
      for (std::size_t c = 0; c < k && keep; ++c) {
        if (!filter[c].count(w[c])) keep = false;
        else enc[c] = index[c].at(w[c]);
      }
      if (keep) out.push_back(enc);
    }
    return StringSet(AlphabetProfile((int)k, q), out);
  };

  double t2 = (0.5 + eps / 2.0) * (1 << (n - 2));
  StringSet x_in_b = encode(Xs, pre_b);  // Xs already lies in pre_a by precondition
  StringSet y_in_a = encode(Ys, pre_a);
  rep.e2 = is_prefix_thick(x_in_b, t2).thick;
  rep.e3 = is_prefix_thick(y_in_a, t2).thick;
  rep.all_events = rep.e1 && rep.e2 && rep.e3;

  std::set<std::vector<std::uint32_t>> xs(Xs.begin(), Xs.end());
  for (const auto& w : Ys)
    if (xs.count(w)) {
      rep.intersect = true;
      break;
    }
  rep.implication_ok = !rep.all_events || rep.intersect;
  return rep;
}

}  // namespace kwlab
