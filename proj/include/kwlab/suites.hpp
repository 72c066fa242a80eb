#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kwlab/barrier.hpp"
#include "kwlab/char_graph.hpp"
#include "kwlab/cover.hpp"
#include "kwlab/formula.hpp"
#include "kwlab/half_duplex.hpp"
#include "kwlab/linear_code.hpp"
#include "kwlab/prefix_thick.hpp"
#include "kwlab/protocol.hpp"
#include "kwlab/rect_game.hpp"
#include "kwlab/relation.hpp"
#include "kwlab/transcript.hpp"
#include "kwlab/truth_table.hpp"

namespace kwlab {

constexpr unsigned kDefaultSeed = 20240817;

enum class CheckStatus { kPass, kFail, kSkipped };

struct CheckResult {
  std::string id;
  std::string name;
  CheckStatus status = CheckStatus::kFail;
  std::string detail;
};

namespace detail {

inline CheckResult pass(std::string id, std::string name, std::string detail) {
  return {std::move(id), std::move(name), CheckStatus::kPass, std::move(detail)};
}
inline CheckResult fail(std::string id, std::string name, std::string detail) {
  return {std::move(id), std::move(name), CheckStatus::kFail, std::move(detail)};
}

// Enumerate a subset of Sigma^m (q^m cells <= 16) given a cell bitmask.
inline StringSet cells_to_set(int m, int q, std::uint32_t mask) {
  std::vector<Str> strs;
  int cells = 1;
  for (int i = 0; i < m; ++i) cells *= q;
  for (int c = 0; c < cells; ++c) {
    if (!((mask >> c) & 1)) continue;
    Str w(m);
    int v = c;
    for (int i = m - 1; i >= 0; --i) {
      w[i] = v % q;
      v /= q;
    }
    strs.push_back(w);
  }
  return StringSet(AlphabetProfile(m, q), strs);
}

inline int cell_of(const Str& w, int q) {
  int c = 0;
  for (int s : w) c = c * q + s;
  return c;
}

}  // namespace detail

// --- Criterion 1: |W(X)| = |X| for every string set, against the oracle.

inline CheckResult criterion_winning_set(unsigned seed) {
  const std::string id = "1", name = "winning-set size identity";
  std::size_t checked = 0;
  for (std::uint32_t mask = 0; mask < (1u << 9); ++mask) {
    StringSet X = detail::cells_to_set(2, 3, mask);
    auto rep = verify_winning_size(X);
    if (!rep.identity || !rep.oracle_checked || !rep.oracle_agrees)
      return detail::fail(id, name, "q=3 m=2 mask=" + std::to_string(mask));
    ++checked;
  }
  std::mt19937 rng(seed);
  for (int iter = 0; iter < 1000; ++iter) {
    int q = 2 + (int)(rng() % 4), m = 1 + (int)(rng() % 5);
    long qm = 1;
    for (int i = 0; i < m; ++i) qm *= q;
    long cap = std::min<long>(qm, qm > 600 ? 20 : 40);
    std::size_t target = 1 + rng() % cap;
    std::set<Str> strs;
    while (strs.size() < target) {
      Str w(m);
      for (int i = 0; i < m; ++i) w[i] = (int)(rng() % q);
      strs.insert(w);
    }
    StringSet X(AlphabetProfile(m, q), {strs.begin(), strs.end()});
    auto rep = verify_winning_size(X);
    if (!rep.identity || !rep.oracle_checked || !rep.oracle_agrees)
      return detail::fail(id, name, "random iter=" + std::to_string(iter) + " q=" +
                                        std::to_string(q) + " m=" + std::to_string(m));
    ++checked;
  }
  return detail::pass(id, name, std::to_string(checked) + " sets, all |W(X)| = |X|");
}

// --- Criterion 2: every pair of thick subsets of Sigma^2 (q=4) intersects.

inline CheckResult criterion_thick_intersection(unsigned seed) {
  const std::string id = "2", name = "thick-pair intersection";
  std::vector<std::uint32_t> thick_masks, witness_masks;
  for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
    StringSet X = detail::cells_to_set(2, 4, mask);
    auto res = is_prefix_thick(X);
    if (!res.thick) continue;
    std::uint32_t wm = 0;
    for (const auto& w : res.witness->strings) wm |= 1u << detail::cell_of(w, 4);
    if ((wm & ~mask) != 0)
      return detail::fail(id, name, "witness not a subset at mask=" + std::to_string(mask));
    thick_masks.push_back(mask);
    witness_masks.push_back(wm);
  }
  for (std::size_t i = 0; i < thick_masks.size(); ++i)
    for (std::size_t j = i; j < thick_masks.size(); ++j)
      if ((witness_masks[i] & witness_masks[j]) == 0)
        return detail::fail(id, name, "disjoint pair " + std::to_string(thick_masks[i]) + "," +
                                          std::to_string(thick_masks[j]));
  // Spot-check the witness string returned by the intersection routine.
  std::mt19937 rng(seed);
  for (int iter = 0; iter < 500 && thick_masks.size() >= 2; ++iter) {
    std::uint32_t ma = thick_masks[rng() % thick_masks.size()];
    std::uint32_t mb = thick_masks[rng() % thick_masks.size()];
    StringSet A = detail::cells_to_set(2, 4, ma), B = detail::cells_to_set(2, 4, mb);
    auto w = intersect_witness(A, B);
    if (!w || !A.contains(*w) || !B.contains(*w))
      return detail::fail(id, name, "bad witness for " + std::to_string(ma) + "," +
                                        std::to_string(mb));
  }
  return detail::pass(id, name,
                      std::to_string(thick_masks.size()) + " thick sets, all pairs intersect");
}

// --- Criterion 3: projection-family density bound and the |F| >= |X| form.

inline CheckResult criterion_projection_bound(unsigned seed) {
  const std::string id = "3", name = "thick projection family bound";
  const double eps_grid[] = {0.0, 0.1, 0.25};
  std::size_t checked = 0;
  auto check_set = [&](const StringSet& X, std::string* err) {
    for (double eps : eps_grid) {
      auto tp = thick_projections(X, eps);
      if (!tp.bound_holds) {
        *err = "density bound fails, q=" + std::to_string(X.profile.q) + " m=" +
               std::to_string(X.profile.m) + " eps=" + std::to_string(eps);
        return false;
      }
      if (X.profile.q == 2 && eps == 0.0 && tp.family.size() < X.size()) {
        *err = "|F| < |X| at q=2 m=" + std::to_string(X.profile.m);
        return false;
      }
      ++checked;
    }
    return true;
  };
  std::string err;
  for (int m = 1; m <= 4; ++m) {
    std::uint64_t cells = 1u << m;
    for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask)
      if (!check_set(detail::cells_to_set(m, 2, (std::uint32_t)mask), &err))
        return detail::fail(id, name, err);
  }
  for (int m = 1; m <= 2; ++m) {
    std::uint64_t cells = 1;
    for (int i = 0; i < m; ++i) cells *= 4;
    for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask)
      if (!check_set(detail::cells_to_set(m, 4, (std::uint32_t)mask), &err))
        return detail::fail(id, name, err);
  }
  std::mt19937 rng(seed);
  for (int m = 3; m <= 4; ++m) {
    long qm = 1;
    for (int i = 0; i < m; ++i) qm *= 4;
    int samples = (m == 3) ? 300 : 150;
    for (int iter = 0; iter < samples; ++iter) {
      std::set<Str> strs;
      std::size_t target = 1 + rng() % std::min<long>(qm, 60);
      while (strs.size() < target) {
        Str w(m);
        for (int i = 0; i < m; ++i) w[i] = (int)(rng() % 4);
        strs.insert(w);
      }
      StringSet X(AlphabetProfile(m, 4), {strs.begin(), strs.end()});
      if (!check_set(X, &err)) return detail::fail(id, name, err);
    }
  }
  return detail::pass(id, name, std::to_string(checked) + " (set, eps) pairs hold");
}

// --- Criterion 4: rectangle-game (L, D) equals the formula-enumeration oracle.

inline CheckResult criterion_kw_connection(unsigned seed) {
  const std::string id = "4", name = "game solver vs formula oracle";
  auto check_one = [&](const TruthTable& f, std::string* err) {
    OracleResult oracle = formula_oracle(f, 16);
    if (!oracle.size_known) {
      *err = "oracle size cap hit at f=" + f.to_hex();
      return false;
    }
    if (f.is_constant()) {
      if (oracle.size != 0 || oracle.depth != kNegInfDepth) {
        *err = "constant convention broken at f=" + f.to_hex();
        return false;
      }
      return true;
    }
    auto fc = formula_complexity_rect(f.preimage(1), f.preimage(0), f.arity);
    if (fc.size != oracle.size || fc.depth != oracle.depth) {
      *err = "mismatch at f=" + f.to_hex() + ": game (" + std::to_string(fc.size) + "," +
             std::to_string(fc.depth) + ") oracle (" + std::to_string(oracle.size) + "," +
             std::to_string(oracle.depth) + ")";
      return false;
    }
    return true;
  };
  std::string err;
  std::size_t checked = 0;
  for (const auto& f : all_functions(2)) {
    if (!check_one(f, &err)) return detail::fail(id, name, err);
    ++checked;
  }
  std::mt19937 rng(seed);
  std::set<std::uint64_t> seen;
  while (seen.size() < 20) {
    std::uint64_t bits = 1 + rng() % 254;  // non-constant 3-bit tables
    if (!seen.insert(bits).second) continue;
    if (!check_one(TruthTable(3, bits), &err)) return detail::fail(id, name, err);
    ++checked;
  }
  return detail::pass(id, name, std::to_string(checked) + " functions, (L, D) agree");
}

// --- Criterion 5: the two-phase protocol validates and cc(compose) <= D(f)+D(g).

inline CheckResult criterion_obvious_protocol(unsigned seed) {
  (void)seed;
  const std::string id = "5", name = "two-phase composition protocol";
  std::map<std::uint64_t, ProtocolTree> kw_tree;
  std::map<std::uint64_t, int> depth_of;
  for (const auto& f : all_functions(2)) {
    if (f.is_constant()) continue;
    RectGame game(kw_of_function(f));
    kw_tree[f.bits] = game.extract(true);
    depth_of[f.bits] = kw_tree[f.bits].depth();
  }
  std::size_t checked = 0;
  for (const auto& f : all_functions(2)) {
    if (f.is_constant()) continue;
    for (const auto& g : all_functions(2)) {
      if (g.is_constant()) continue;
      Relation std_comp = compose(f, g, false);
      Relation strong_comp = compose(f, g, true);
      ProtocolTree P = obvious_protocol(std_comp, g, kw_tree[f.bits], kw_tree[g.bits]);
      if (!validate_protocol(P, std_comp).ok())
        return detail::fail(id, name, "invalid on standard composition f=" + f.to_hex() +
                                          " g=" + g.to_hex());
      ProtocolTree Ps = obvious_protocol(strong_comp, g, kw_tree[f.bits], kw_tree[g.bits]);
      if (!validate_protocol(Ps, strong_comp).ok())
        return detail::fail(id, name, "invalid on strong composition f=" + f.to_hex() +
                                          " g=" + g.to_hex());
      int cc = RectGame(std_comp).exact_cc();
      if (cc > depth_of[f.bits] + depth_of[g.bits])
        return detail::fail(id, name, "cc " + std::to_string(cc) + " > D(f)+D(g) at f=" +
                                          f.to_hex() + " g=" + g.to_hex());
      ++checked;
    }
  }
  return detail::pass(id, name, std::to_string(checked) + " pairs, bound and validity hold");
}

// --- Criterion 6: graph-equality cover count equals the chromatic number.

inline CheckResult criterion_graph_eq(unsigned seed) {
  const std::string id = "6", name = "graph equality cover identity";
  std::size_t checked = 0;
  auto check_graph = [&](const SimpleGraph& G, std::string* err) {
    auto eq = verify_graph_eq_ncc(G);
    if (!eq.matches) {
      *err = "cover " + std::to_string(eq.cover_number) + " != chi " +
             std::to_string(eq.chromatic) + " (n=" + std::to_string(G.n) + ")";
      return false;
    }
    auto ineq = verify_graph_ineq_bounds(G);
    if (!ineq.holds) {
      *err = "inequality cover outside bracket (n=" + std::to_string(G.n) + ")";
      return false;
    }
    ++checked;
    return true;
  };
  std::string err;
  for (int n = 1; n <= 5; ++n) {
    int pairs = n * (n - 1) / 2;
    for (std::uint32_t em = 0; em < (1u << pairs); ++em) {
      SimpleGraph G(n);
      int bit = 0;
      for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit)
          if ((em >> bit) & 1) G.add_edge(u, v);
      if (!check_graph(G, &err)) return detail::fail(id, name, err);
    }
  }
  std::mt19937 rng(seed);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 6 + (int)(rng() % 5);
    SimpleGraph G(n);
    for (int v = 1; v < n; ++v)
      for (int u = 0; u < v; ++u)
        if (rng() % 2) G.add_edge(u, v);
    if (!check_graph(G, &err)) return detail::fail(id, name, err);
  }
  return detail::pass(id, name, std::to_string(checked) + " graphs, cover = chi throughout");
}

// --- Criterion 7: the parity formula is correct and has size <= 4n^2.

inline CheckResult criterion_parity(unsigned seed) {
  (void)seed;
  const std::string id = "7", name = "parity formula size";
  for (int n = 1; n <= 10; ++n) {
    FormulaPtr F = build_parity_formula(n);
    if (F->size() > 4 * n * n)
      return detail::fail(id, name, "size " + std::to_string(F->size()) + " > 4n^2 at n=" +
                                        std::to_string(n));
    for (std::uint32_t x = 0; x < (1u << n); ++x)
      if (F->eval(x, n) != (int)(popcount64(x) & 1))
        return detail::fail(id, name, "wrong value at n=" + std::to_string(n) + " x=" +
                                          std::to_string(x));
  }
  return detail::pass(id, name, "n <= 10, all inputs correct, size <= 4n^2");
}

// --- Criterion 8: the multiplexor reduction protocol is valid, partially
// half-duplex, solves the relation, and has depth c + ceil(log(mn)) + 3.

inline CheckResult criterion_reduction(unsigned seed) {
  (void)seed;
  const std::string id = "8", name = "multiplexor reduction protocol";
  for (const TruthTable& f : {tt_and2(), tt_xor2()}) {
    std::map<std::uint64_t, ProtocolTree> protocols;
    int c = 0;
    for (const auto& g : all_functions(2)) {
      if (g.is_constant()) continue;
      Relation comp = compose(f, g, true);
      if (comp.x_size == 0 || comp.y_size == 0) continue;
      protocols[g.bits] = RectGame(comp).extract(true);
      c = std::max(c, protocols[g.bits].depth());
    }
    HDProtocol P = reduction_transform(f, 2, protocols, true);
    Relation R = mux_compose(f, 2, true);
    auto rep = validate_hd(P);
    if (!rep.ok())
      return detail::fail(id, name, "structure at f=" + f.to_hex() + ": " + rep.problems[0]);
    std::string why;
    if (!hd_solves(P, R, &why))
      return detail::fail(id, name, "f=" + f.to_hex() + ": " + why);
    if (!is_partially_hd(P, R))
      return detail::fail(id, name, "non-classical same-function round at f=" + f.to_hex());
    if (P.depth != c + 2 + 3)
      return detail::fail(id, name, "depth " + std::to_string(P.depth) + " != c+5 at f=" +
                                        f.to_hex() + " (c=" + std::to_string(c) + ")");
  }
  return detail::pass(id, name, "AND2 and XOR2 instances valid, depth = c + 5");
}

// --- Criterion 9: candidate-transcript halving and leaf invariants.

inline CheckResult criterion_transcript_invariants(unsigned seed) {
  (void)seed;
  const std::string id = "9", name = "transcript construction invariants";
  std::size_t runs = 0;
  for (const auto& f : all_functions(2)) {
    if (f.is_constant()) continue;
    for (const TruthTable& g : {tt_and2(), tt_or2(), tt_xor2()}) {
      Relation comp = compose(f, g, true);
      ProtocolTree Pi = RectGame(comp).extract(true);
      auto res = candidate_transcript(Pi, f, g, true, Pi.depth());
      for (const auto& it : res.iters) {
        if (2 * it.l_after < it.l_before)
          return detail::fail(id, name, "L more than halved at f=" + f.to_hex() + " g=" +
                                            g.to_hex());
        if (it.max_shrink > 2.0 + 1e-9)
          return detail::fail(id, name, "consistency set shrank more than 2x at f=" +
                                            f.to_hex() + " g=" + g.to_hex());
      }
      if (res.reached_leaf && res.final_l > 1)
        return detail::fail(id, name, "leaf with L(AxB) = " + std::to_string(res.final_l) +
                                          " > 1 at f=" + f.to_hex() + " g=" + g.to_hex());
      ++runs;
    }
  }
  return detail::pass(id, name, std::to_string(runs) + " runs, halving and leaf bounds hold");
}

// --- Criterion 10: events 1-3 imply nonempty intersection, with zero
// counterexamples across exhaustive and sampled sweeps.

namespace detail {

// Full projection of the product set g^{-1}(a_i) over the coordinates of I,
// as raw row values ascending by coordinate.
inline std::vector<std::vector<std::uint32_t>> projected_product(const TruthTable& g,
                                                                 std::uint32_t a,
                                                                 std::uint32_t I, int m) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (int i = 0; i < m; ++i) {
    if (!((I >> i) & 1)) continue;
    auto alpha = g.preimage((a >> (m - 1 - i)) & 1);
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& w : out)
      for (auto v : alpha) {
        auto e = w;
        e.push_back(v);
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::vector<std::uint32_t>> subset_by_bits(
    const std::vector<std::vector<std::uint32_t>>& full, std::uint64_t bits) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t i = 0; i < full.size(); ++i)
    if ((bits >> i) & 1) out.push_back(full[i]);
  return out;
}

}  // namespace detail

inline CheckResult criterion_pair_events(unsigned seed) {
  const std::string id = "10", name = "pair-event intersection implication";
  const int m = 2;
  std::size_t checked = 0, events_held = 0;
  auto run = [&](const TruthTable& gA, const TruthTable& gB, std::uint32_t a, std::uint32_t b,
                 std::uint32_t I, const std::vector<std::vector<std::uint32_t>>& Xs,
                 const std::vector<std::vector<std::uint32_t>>& Ys) {
    auto rep = check_pair_events(gA, gB, a, b, I, Xs, Ys, 0.1, m);
    ++checked;
    if (rep.all_events) ++events_held;
    return rep.implication_ok;
  };
  for (const auto& gA : balanced_functions(2))
    for (const auto& gB : balanced_functions(2))
      for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 4; ++b)
          for (std::uint32_t I = 0; I < 4; ++I) {
            auto PX = detail::projected_product(gA, a, I, m);
            auto PY = detail::projected_product(gB, b, I, m);
            for (std::uint64_t xb = 0; xb < (1ull << PX.size()); ++xb)
              for (std::uint64_t yb = 0; yb < (1ull << PY.size()); ++yb)
                if (!run(gA, gB, a, b, I, detail::subset_by_bits(PX, xb),
                         detail::subset_by_bits(PY, yb)))
                  return detail::fail(id, name, "counterexample n=2 gA=" + gA.to_hex() +
                                                    " gB=" + gB.to_hex());
          }
  std::mt19937 rng(seed);
  auto balanced3 = balanced_functions(3);
  for (int iter = 0; iter < 10000; ++iter) {
    const auto& gA = balanced3[rng() % balanced3.size()];
    const auto& gB = balanced3[rng() % balanced3.size()];
    std::uint32_t a = rng() % 4, b = rng() % 4, I = rng() % 4;
    auto PX = detail::projected_product(gA, a, I, m);
    auto PY = detail::projected_product(gB, b, I, m);
    std::uint64_t xb = ((std::uint64_t)rng() << 32 | rng()) & ((1ull << PX.size()) - 1);
    std::uint64_t yb = ((std::uint64_t)rng() << 32 | rng()) & ((1ull << PY.size()) - 1);
    if (!run(gA, gB, a, b, I, detail::subset_by_bits(PX, xb), detail::subset_by_bits(PY, yb)))
      return detail::fail(id, name, "counterexample n=3 iter=" + std::to_string(iter));
  }
  return detail::pass(id, name, std::to_string(checked) + " tuples, events held " +
                                    std::to_string(events_held) + " times, no counterexample");
}

// --- Criterion 11: the announced-weight-and-coset transcript has an edgeless
// strong characteristic graph, and the coset choice is maximal.

inline CheckResult criterion_barrier(unsigned seed) {
  (void)seed;
  const std::string id = "11", name = "edgeless transcript construction";
  TruthTable f(4, 0x0117);  // indicator of weight <= 1; f(0000)=1, f(1111)=0
  LinearCode C;
  C.length = 4;
  C.basis = {0xF};  // repetition code, d = 4
  auto res = barrier_construct(f, C, 0, 4);
  if (!res.zero_edges)
    return detail::fail(id, name, std::to_string(res.edges) + " edges in the strong graph");
  if (!res.coset_sum_ok || !res.coset_max_ok)
    return detail::fail(id, name, "coset maximality inequality fails");
  // The distilled precondition must be enforced.
  LinearCode C2 = find_linear_code(4, 2);
  bool refused = false;
  try {
    barrier_construct(f, C2, 0, 4 - C2.min_distance());
  } catch (const std::invalid_argument&) {
    refused = true;
  }
  if (!refused) return detail::fail(id, name, "violated precondition not refused");
  return detail::pass(id, name, "zero edges over " + std::to_string(res.ctx.V.size()) +
                                    " surviving functions; coset inequality holds");
}

// --- Criterion 12: paper-scale parameters report infeasible/vacuous rather
// than pass; relaxed parameters pass their restated bullets.

inline CheckResult criterion_vacuity(unsigned seed) {
  (void)seed;
  const std::string id = "12", name = "parameter feasibility reporting";
  Relation R = mux_compose(tt_and2(), 2, true);
  HDProtocol P = hd_trivial(R);
  TranscriptContext ctx = derive_context(P, R, {});
  std::vector<std::uint64_t> V;
  for (const auto& g : balanced_functions(2)) V.push_back(g.bits);

  LiveParams paper;  // gamma = 0.041, kappa = 8
  auto r1 = check_alive(ctx, V, paper);
  if (!r1.infeasible || r1.alive)
    return detail::fail(id, name, "gamma=0.041 kappa=8 not reported infeasible");
  LiveParams barrier_params;
  barrier_params.gamma = 0.64;
  auto r2 = check_alive(ctx, V, barrier_params);
  if (!r2.infeasible || r2.alive)
    return detail::fail(id, name, "gamma=0.64 kappa=8 not reported infeasible");
  LiveParams relaxed;
  relaxed.gamma = 0.5;
  relaxed.kappa = 0;
  auto r3 = check_alive(ctx, V, relaxed);
  if (r3.infeasible || !r3.alive)
    return detail::fail(id, name, "relaxed liveness bullets fail (margins " +
                                      std::to_string(r3.v_margin) + ", " +
                                      std::to_string(r3.density_margin) + ", " +
                                      std::to_string(r3.l_margin) + ")");

  auto cb = verify_chromatic_bound(P, R, {}, true);
  if (!cb.vacuous || !cb.holds)
    return detail::fail(id, name, "chromatic bound at micro scale not reported vacuous");

  LiveParams gp;
  gp.gamma = 1.0;
  gp.eps = 0.0;
  gp.kappa = 0;
  auto gr = build_Gprime(ctx, V, gp);
  if (!gr.ok)
    return detail::fail(id, name, "relaxed sub-graph pipeline: " + gr.failure);
  if (!gr.agree_bullet || !gr.thick_bullet || !gr.size_bullet)
    return detail::fail(id, name, "relaxed sub-graph bullets fail");
  return detail::pass(id, name,
                      "paper constants infeasible/vacuous; relaxed bullets pass (|V'| = " +
                          std::to_string(gr.Vprime.size()) + ")");
}

// --- Suite registry.

using CriterionFn = CheckResult (*)(unsigned);

inline const std::vector<std::pair<std::string, CriterionFn>>& all_criteria() {
  static const std::vector<std::pair<std::string, CriterionFn>> table = {
      {"1", criterion_winning_set},         {"2", criterion_thick_intersection},
      {"3", criterion_projection_bound},    {"4", criterion_kw_connection},
      {"5", criterion_obvious_protocol},    {"6", criterion_graph_eq},
      {"7", criterion_parity},              {"8", criterion_reduction},
      {"9", criterion_transcript_invariants}, {"10", criterion_pair_events},
      {"11", criterion_barrier},            {"12", criterion_vacuity},
  };
  return table;
}

inline const std::map<std::string, std::vector<std::string>>& suite_registry() {
  static const std::map<std::string, std::vector<std::string>> reg = {
      {"boolcore", {"7"}},
      {"prefixthick", {"1", "2", "3"}},
      {"kw-connection", {"4"}},
      {"detcc", {"4", "5"}},
      {"relations", {"5"}},
      {"ndcc", {"6"}},
      {"halfduplex", {"8"}},
      {"structlab", {"9", "10", "12"}},
      {"barrier", {"11"}},
      {"all", {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12"}},
  };
  return reg;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, ids] : suite_registry()) out.push_back(name);
  return out;
}

inline CheckResult run_criterion(const std::string& cid, unsigned seed = kDefaultSeed) {
  for (const auto& [id, fn] : all_criteria()) {
    if (id != cid) continue;
    try {
      return fn(seed);
    } catch (const BudgetExceeded& e) {
      return {id, "criterion " + id, CheckStatus::kSkipped, e.what()};
    } catch (const std::exception& e) {
      return {id, "criterion " + id, CheckStatus::kFail, std::string("exception: ") + e.what()};
    }
  }
  throw std::invalid_argument("run_criterion: unknown id " + cid);
}

inline std::vector<CheckResult> run_suite(const std::string& name,
                                          unsigned seed = kDefaultSeed) {
  auto it = suite_registry().find(name);
  if (it == suite_registry().end())
    throw std::invalid_argument("run_suite: unknown suite " + name);
  std::vector<CheckResult> out;
  for (const auto& cid : it->second) out.push_back(run_criterion(cid, seed));
  return out;
}

inline std::vector<CheckResult> run_acceptance(unsigned seed = kDefaultSeed) {
  return run_suite("all", seed);
}

}  // namespace kwlab
