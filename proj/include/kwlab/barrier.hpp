#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/char_graph.hpp"
#include "kwlab/half_duplex.hpp"
#include "kwlab/linear_code.hpp"
#include "kwlab/rect_game.hpp"
#include "kwlab/transcript.hpp"

namespace kwlab {

namespace detail {

// Lexicographically smallest member of v's coset.
inline std::uint32_t coset_rep_of(const LinearCode& C, std::uint32_t v) {
  std::uint32_t best = v;
  for (auto w : C.codewords()) best = std::min(best, v ^ w);
  return best;
}

// Announcement-only half-duplex protocol: at each round one player sends one
// bit of a per-input announcement string and the other receives. Leaves carry
// no output (the protocol is a prefix, used only for transcript contexts).
inline HDNodePtr announcement_tree(
    const std::vector<std::vector<int>>& bits, std::size_t domain,
    const std::vector<int>& speaker, int player) {
  std::function<HDNodePtr(std::size_t, const std::vector<std::size_t>&)> build =
      [&](std::size_t r, const std::vector<std::size_t>& members) -> HDNodePtr {
    if (members.empty()) return nullptr;
    auto v = std::make_shared<HDNode>();
    v->inputs = DynBitset(domain);
    for (auto i : members) v->inputs.set(i);
    if (r == speaker.size()) return v;
    if (speaker[r] == player) {
      std::vector<std::size_t> part[2];
      for (auto i : members) part[bits[i][r]].push_back(i);
      v->child[kSd0] = build(r + 1, part[0]);
      v->child[kSd1] = build(r + 1, part[1]);
    } else {
      v->child[kRc0] = build(r + 1, members);
      v->child[kRc1] = build(r + 1, members);
    }
    return v;
  };
  std::vector<std::size_t> all(bits.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return build(0, all);
}

inline void append_bits(std::vector<int>& out, std::uint32_t value, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back((value >> i) & 1);
}

}  // namespace detail

struct BarrierResult {
  Relation relation;
  HDProtocol protocol;
  std::vector<int> pi1;
  TranscriptContext ctx;
  CharGraph graph;
  int edges = 0;
  bool zero_edges = false;
  // Coset selection data.
  std::uint32_t coset = 0;                 // chosen coset representative
  std::vector<std::uint32_t> coset_reps;
  std::vector<int> coset_l;                // L(A_W' x f^-1(0)) per coset
  int l_f = 0;
  bool coset_sum_ok = false;  // sum over cosets >= L(f) (sub-additivity)
  bool coset_max_ok = false;  // chosen L * #cosets >= L(f)
  AliveReport alive;
  std::vector<std::uint64_t> V;  // functions balanced after fixing the first bit
};

// The no-edge transcript: Alice and Bob announce the weights of their
// matrices' first columns (forced to w_x and w_y) and the coset of the code C
// containing their column vectors (both the coset W maximizing
// L((W cap f^-1(1)) x f^-1(0))). When w_y - w_x > m - d(C), any matrices
// consistent with the transcript disagree on more rows than same-coset
// column vectors can, so the strong characteristic graph has no edges.
inline BarrierResult barrier_construct(const TruthTable& f, const LinearCode& C, int w_x,
                                       int w_y, int n = 2, LiveParams params = {},
                                       SearchBudget budget = {}) {
  const int m = f.arity;
  if (f.is_constant()) throw std::invalid_argument("barrier_construct: constant f");
  if (C.length != m) throw std::invalid_argument("barrier_construct: code length != m");
  if (w_x < 0 || w_y > m || w_x >= w_y)
    throw std::invalid_argument("barrier_construct: need 0 <= w_x < w_y <= m");
  if (w_y - w_x <= m - C.min_distance())
    throw std::invalid_argument("barrier_construct: w_y - w_x > m - d(C) violated");

  BarrierResult res;
  res.coset_reps = cosets(C);
  auto ones = f.preimage(1);
  auto zeros = f.preimage(0);
  res.l_f = formula_complexity_rect(ones, zeros, m, budget).size;
  int best_l = -1;
  long long sum_l = 0;
  for (auto rep : res.coset_reps) {
    std::vector<std::uint32_t> aw;
    for (auto a : ones)
      if (detail::coset_rep_of(C, a) == rep) aw.push_back(a);
    int l = formula_complexity_rect(aw, zeros, m, budget).size;
    res.coset_l.push_back(l);
    sum_l += l;
    if (l > best_l) {
      best_l = l;
      res.coset = rep;
    }
  }
  res.coset_sum_ok = sum_l >= res.l_f;
  res.coset_max_ok = (long long)best_l * (long long)res.coset_reps.size() >= res.l_f;

  std::vector<std::uint32_t> a_w, b_w;
  for (auto a : ones)
    if (detail::coset_rep_of(C, a) == res.coset) a_w.push_back(a);
  for (auto b : zeros)
    if (detail::coset_rep_of(C, b) == res.coset) b_w.push_back(b);
  if (a_w.empty() || b_w.empty())
    throw std::logic_error("barrier_construct: empty coset side");

  res.relation = mux_compose(f, n, true, m * n);
  const Relation& R = res.relation;

  int wbits = 0;
  while ((1 << wbits) <= m) ++wbits;
  int sbits = 0;
  while ((1u << sbits) < res.coset_reps.size()) ++sbits;
  auto coset_id = [&](std::uint32_t v) {
    std::uint32_t rep = detail::coset_rep_of(C, v);
    return (std::uint32_t)(std::lower_bound(res.coset_reps.begin(), res.coset_reps.end(), rep) -
                           res.coset_reps.begin());
  };
  auto first_col_weight = [&](std::uint64_t key) {
    BooleanMatrix X = BooleanMatrix::from_key(m, n, key);
    int w = 0;
    for (int i = 0; i < m; ++i) w += X.entry(i, 0);
    return (std::uint32_t)w;
  };

  // Rounds: Alice's weight, Bob's weight, Alice's coset, Bob's coset.
  std::vector<int> speaker;
  for (int i = 0; i < wbits; ++i) speaker.push_back(0);
  for (int i = 0; i < wbits; ++i) speaker.push_back(1);
  for (int i = 0; i < sbits; ++i) speaker.push_back(0);
  for (int i = 0; i < sbits; ++i) speaker.push_back(1);

  auto announce = [&](const MuxInput& in, bool alice) {
    std::vector<int> bits;
    std::uint32_t w = first_col_weight(in.payload);
    std::uint32_t cid = coset_id(apply_rowwise(
        in.g, BooleanMatrix::from_key(m, n, in.payload)).bits);
    if (alice) {
      detail::append_bits(bits, w, wbits);
      detail::append_bits(bits, 0, wbits);  // placeholder at Bob's turns
      detail::append_bits(bits, cid, sbits);
      detail::append_bits(bits, 0, sbits);
    } else {
      detail::append_bits(bits, 0, wbits);
      detail::append_bits(bits, w, wbits);
      detail::append_bits(bits, 0, sbits);
      detail::append_bits(bits, cid, sbits);
    }
    return bits;
  };

  std::vector<std::vector<int>> a_bits, b_bits;
  for (const auto& in : R.x_mux) a_bits.push_back(announce(in, true));
  for (const auto& in : R.y_mux) b_bits.push_back(announce(in, false));

  res.protocol.depth = (int)speaker.size();
  res.protocol.x_size = R.x_size;
  res.protocol.y_size = R.y_size;
  res.protocol.alice = detail::announcement_tree(a_bits, R.x_size, speaker, 0);
  res.protocol.bob = detail::announcement_tree(b_bits, R.y_size, speaker, 1);

  detail::append_bits(res.pi1, (std::uint32_t)w_x, wbits);
  detail::append_bits(res.pi1, (std::uint32_t)w_y, wbits);
  detail::append_bits(res.pi1, coset_id(res.coset), sbits);
  detail::append_bits(res.pi1, coset_id(res.coset), sbits);

  res.ctx = derive_context(res.protocol, R, res.pi1);
  res.graph = char_graph(res.ctx, true);
  res.edges = res.graph.edge_count();
  res.zero_edges = (res.edges == 0);

  // The associated function set: balanced functions whose restrictions on the
  // first input bit are both balanced.
  for (const auto& g : balanced_functions(n)) {
    int half = 1 << (n - 1);
    int ones0 = 0, ones1 = 0;
    for (int x = 0; x < half; ++x) ones0 += g.eval(x);
    for (int x = half; x < 2 * half; ++x) ones1 += g.eval(x);
    if (2 * ones0 == half && 2 * ones1 == half) res.V.push_back(g.bits);
  }
  res.alive = check_alive(res.ctx, res.V, params, budget);
  return res;
}

}  // namespace kwlab
