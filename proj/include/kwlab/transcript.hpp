#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/entropy.hpp"
#include "kwlab/half_duplex.hpp"
#include "kwlab/rect_game.hpp"
#include "kwlab/relation.hpp"
#include "kwlab/truth_table.hpp"

namespace kwlab {

// Everything a partial transcript of a multiplexor-composition protocol
// induces: per-function consistency sets of matrices, the surviving column
// vectors, and the set of functions still in play.
struct TranscriptContext {
  TruthTable f;
  int m = 0, n = 0;
  bool strong = false;
  std::vector<int> pi1;
  // g.bits -> consistent matrix keys on each side.
  std::map<std::uint64_t, std::vector<std::uint64_t>> X, Y;
  // g.bits -> column vectors a with X(g,a) nonempty (resp. b, Y(g,b)).
  std::map<std::uint64_t, std::vector<std::uint32_t>> A, B;
  std::vector<std::uint64_t> V;  // functions with both sides nonempty

  std::vector<std::uint64_t> X_of(std::uint64_t gbits, std::uint32_t a) const {
    return side_of(X, gbits, a);
  }
  std::vector<std::uint64_t> Y_of(std::uint64_t gbits, std::uint32_t b) const {
    return side_of(Y, gbits, b);
  }

 private:
  std::vector<std::uint64_t> side_of(
      const std::map<std::uint64_t, std::vector<std::uint64_t>>& side, std::uint64_t gbits,
      std::uint32_t val) const {
    std::vector<std::uint64_t> out;
    auto it = side.find(gbits);
    if (it == side.end()) return out;
    TruthTable g(n, gbits);
    for (auto key : it->second)
      if (apply_rowwise(g, BooleanMatrix::from_key(m, n, key)).bits == val) out.push_back(key);
    return out;
  }
};

// Derives the context of a transcript prefix by an exhaustive consistency
// scan over the relation's domains.
inline TranscriptContext derive_context(const HDProtocol& P, const Relation& R,
                                        const std::vector<int>& pi1) {
  if (R.x_mux.empty() || R.y_mux.empty())
    throw std::invalid_argument("derive_context: relation has no function components");
  TranscriptContext ctx;
  ctx.f = R.f;
  ctx.m = R.m;
  ctx.n = R.n;
  ctx.strong = (R.kind.find("strong") != std::string::npos);
  ctx.pi1 = pi1;
  ConsistencySets cs = consistent_inputs(P, pi1);
  for (auto xi : cs.x) ctx.X[R.x_mux[xi].g.bits].push_back(R.x_mux[xi].payload);
  for (auto yi : cs.y) ctx.Y[R.y_mux[yi].g.bits].push_back(R.y_mux[yi].payload);
  for (const auto& [gbits, keys] : ctx.X) {
    TruthTable g(ctx.n, gbits);
    std::vector<std::uint32_t> vals;
    for (auto key : keys)
      vals.push_back(apply_rowwise(g, BooleanMatrix::from_key(ctx.m, ctx.n, key)).bits);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    ctx.A[gbits] = vals;
  }
  for (const auto& [gbits, keys] : ctx.Y) {
    TruthTable g(ctx.n, gbits);
    std::vector<std::uint32_t> vals;
    for (auto key : keys)
      vals.push_back(apply_rowwise(g, BooleanMatrix::from_key(ctx.m, ctx.n, key)).bits);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    ctx.B[gbits] = vals;
  }
  for (const auto& [gbits, vals] : ctx.A)
    if (!vals.empty() && ctx.B.count(gbits) && !ctx.B.at(gbits).empty())
      ctx.V.push_back(gbits);
  return ctx;
}

struct LiveParams {
  double gamma = 0.041;
  int kappa = 8;
  double eps = 0.001;
  double beta = 0.12;

  // gamma < min{ 2 log2(e) beta^2, (1/3)(1/2 - beta)^2 }; a strict inequality
  // here leaves room to pick eps small enough for the full constraint chain.
  bool constraint_chain_ok() const {
    double l2e = std::log2(std::exp(1.0));
    double c1 = 2.0 * l2e * beta * beta;
    double c2 = (1.0 / 3.0) * (0.5 - beta) * (0.5 - beta);
    return gamma < std::min(c1, c2);
  }
};

struct AliveReport {
  bool alive = false;       // all three bullets hold on the chosen set V
  bool infeasible = false;  // the L bullet asks for more than log L <= m allows
  // Margins in log2 units; negative means the bullet fails.
  double v_margin = 0;       // log2|V| - (log2|V0| - m)
  double v_pi_margin = 0;    // same bound evaluated on the balanced part of V_pi
  double density_margin = 0; // min over g, a/b of log2|X(g,a)| - (1 - gamma m + log2|g^-1(a)|)
  double l_margin = 0;       // min over g of log2 L(A x B) - ((1-gamma)m + kappa log m + kappa)
  double l_rhs = 0;
  std::size_t v_size = 0, v0_size = 0;
};

// The three liveness bullets, with exact protocol-size values. The density
// and complexity bullets are checked on the chosen set V; the size bullet is
// additionally reported for the full consistency set V_pi.
inline AliveReport check_alive(const TranscriptContext& ctx,
                               const std::vector<std::uint64_t>& V, const LiveParams& p,
                               SearchBudget budget = {}) {
  const int m = ctx.m, n = ctx.n;
  AliveReport rep;
  rep.v_size = V.size();
  rep.v0_size = binomial(1 << n, 1 << (n - 1));
  double v0_log = std::log2((double)rep.v0_size);
  rep.v_margin = (V.empty() ? -1e9 : std::log2((double)V.size())) - (v0_log - m);
  std::size_t v_pi_balanced = 0;
  for (auto gbits : ctx.V)
    if (TruthTable(n, gbits).is_balanced()) ++v_pi_balanced;
  rep.v_pi_margin =
      (v_pi_balanced == 0 ? -1e9 : std::log2((double)v_pi_balanced)) - (v0_log - m);

  rep.density_margin = 1e9;
  rep.l_margin = 1e9;
  rep.l_rhs = (1.0 - p.gamma) * m + p.kappa * std::log2((double)m) + p.kappa;
  rep.infeasible = rep.l_rhs > m + 1e-9;
  for (auto gbits : V) {
    TruthTable g(n, gbits);
    if (!g.is_balanced()) throw std::invalid_argument("check_alive: unbalanced function in V");
    double preim_log = (double)m * (n - 1);  // |g^-1(a)| = 2^{m(n-1)} for balanced g
    for (auto a : ctx.A.count(gbits) ? ctx.A.at(gbits) : std::vector<std::uint32_t>{}) {
      auto xs = ctx.X_of(gbits, a);
      double lhs = xs.empty() ? -1e9 : std::log2((double)xs.size());
      rep.density_margin = std::min(rep.density_margin, lhs - (1.0 - p.gamma * m + preim_log));
    }
    for (auto b : ctx.B.count(gbits) ? ctx.B.at(gbits) : std::vector<std::uint32_t>{}) {
      auto ys = ctx.Y_of(gbits, b);
      double lhs = ys.empty() ? -1e9 : std::log2((double)ys.size());
      rep.density_margin = std::min(rep.density_margin, lhs - (1.0 - p.gamma * m + preim_log));
    }
    const auto& A = ctx.A.at(gbits);
    const auto& B = ctx.B.at(gbits);
    int L = formula_complexity_rect(A, B, m, budget).size;
    double lhs = (L <= 0) ? -1e9 : std::log2((double)L);
    rep.l_margin = std::min(rep.l_margin, lhs - rep.l_rhs);
  }
  rep.alive = rep.v_margin >= -1e-9 && rep.density_margin >= -1e-9 && rep.l_margin >= -1e-9;
  return rep;
}

// One appended bit of the candidate-transcript construction, with the
// quantities the halving invariants talk about.
struct TranscriptIter {
  int owner = 0;  // 0 = Alice's bit
  int bit = 0;
  int l_before = 0, l_after = 0;
  std::size_t side_before = 0, side_after = 0;       // |A| resp. |B|
  double max_shrink = 1.0;  // worst |X(g,a)| (or |Y(g,b)|) shrink factor this bit
};

struct CandidateResult {
  std::vector<int> pi;
  std::vector<TranscriptIter> iters;
  bool reached_leaf = false;
  int final_l = 0;
  std::vector<std::uint32_t> A, B;  // surviving column vectors
};

// Bit-by-bit transcript construction for a fixed inner function: at each of
// the speaking player's turns, take the per-column-vector majority bit, split
// the vectors by it, and follow the side with the larger exact complexity
// (ties to 0 in both places).
inline CandidateResult candidate_transcript(const ProtocolTree& Pi, const TruthTable& f,
                                            const TruthTable& g, bool strong, int target_len,
                                            SearchBudget budget = {}) {
  const int m = f.arity, n = g.arity;
  Relation comp = compose(f, g, strong);
  if (comp.x_size == 0 || comp.y_size == 0)
    throw std::invalid_argument("candidate_transcript: one-sided composition");
  std::map<std::uint64_t, std::size_t> x_index, y_index;
  for (std::size_t i = 0; i < comp.x_matrices.size(); ++i) x_index[comp.x_matrices[i]] = i;
  for (std::size_t i = 0; i < comp.y_matrices.size(); ++i) y_index[comp.y_matrices[i]] = i;

  std::map<std::uint32_t, std::vector<std::uint64_t>> X, Y;
  for (auto key : comp.x_matrices)
    X[apply_rowwise(g, BooleanMatrix::from_key(m, n, key)).bits].push_back(key);
  for (auto key : comp.y_matrices)
    Y[apply_rowwise(g, BooleanMatrix::from_key(m, n, key)).bits].push_back(key);

  auto keys_of = [](const std::map<std::uint32_t, std::vector<std::uint64_t>>& side) {
    std::vector<std::uint32_t> out;
    for (const auto& [v, ms] : side) out.push_back(v);
    return out;
  };
  auto complexity = [&](const std::vector<std::uint32_t>& A,
                        const std::vector<std::uint32_t>& B) {
    return formula_complexity_rect(A, B, m, budget).size;
  };

  CandidateResult res;
  const ProtoNode* node = Pi.root.get();
  while ((int)res.pi.size() < target_len && !node->is_leaf) {
    bool alice = (node->owner == 0);
    auto& side = alice ? X : Y;
    const auto& index = alice ? x_index : y_index;
    auto in_child = [&](std::uint64_t key, int b) {
      std::size_t idx = index.at(key);
      std::uint32_t mask = alice ? node->child[b]->xmask : node->child[b]->ymask;
      return ((mask >> idx) & 1) != 0;
    };
    // Per-vector majority bit, ties to 0.
    std::vector<std::uint32_t> split[2];
    for (const auto& [val, keys] : side) {
      std::size_t ones = 0;
      for (auto key : keys)
        if (in_child(key, 1)) ++ones;
      split[2 * ones > keys.size() ? 1 : 0].push_back(val);
    }
    std::vector<std::uint32_t> other = keys_of(alice ? Y : X);
    int l0 = alice ? complexity(split[0], other) : complexity(other, split[0]);
    int l1 = alice ? complexity(split[1], other) : complexity(other, split[1]);
    int sigma = (l1 > l0) ? 1 : 0;

    TranscriptIter it;
    it.owner = alice ? 0 : 1;
    it.bit = sigma;
    {
      auto mine = keys_of(side);
      it.l_before = alice ? complexity(mine, other) : complexity(other, mine);
    }
    it.l_after = sigma ? l1 : l0;
    it.side_before = side.size();

    std::map<std::uint32_t, std::vector<std::uint64_t>> next;
    for (auto val : split[sigma]) {
      std::vector<std::uint64_t> kept;
      for (auto key : side.at(val))
        if (in_child(key, sigma)) kept.push_back(key);
      if (kept.empty())
        throw std::logic_error("candidate_transcript: majority side emptied");
      it.max_shrink = std::max(it.max_shrink, (double)side.at(val).size() / kept.size());
      next[val] = std::move(kept);
    }
    side = std::move(next);
    it.side_after = side.size();
    res.iters.push_back(it);
    res.pi.push_back(sigma);
    node = node->child[sigma].get();
  }
  res.reached_leaf = node->is_leaf;
  res.A = keys_of(X);
  res.B = keys_of(Y);
  res.final_l = complexity(res.A, res.B);
  return res;
}

struct PopularResult {
  std::vector<int> pi1;
  std::vector<std::uint64_t> V;
  std::size_t distinct = 0;
  bool pigeonhole_ok = false;  // |V| * #distinct >= #candidates
};

// The modal transcript over the candidates, ties to the lexicographically
// smallest bit string.
inline PopularResult popular_transcript(
    const std::map<std::uint64_t, std::vector<int>>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("popular_transcript: no candidates");
  std::size_t len = candidates.begin()->second.size();
  for (const auto& [g, pi] : candidates)
    if (pi.size() != len) throw std::invalid_argument("popular_transcript: unequal lengths");
  std::map<std::vector<int>, std::vector<std::uint64_t>> groups;
  for (const auto& [g, pi] : candidates) groups[pi].push_back(g);
  PopularResult res;
  res.distinct = groups.size();
  for (const auto& [pi, gs] : groups)
    if (gs.size() > res.V.size()) {
      res.pi1 = pi;
      res.V = gs;
    }
  std::sort(res.V.begin(), res.V.end());
  res.pigeonhole_ok = res.V.size() * res.distinct >= candidates.size();
  return res;
}

}  // namespace kwlab
