#include <catch2/catch_amalgamated.hpp>

#include "kwlab/barrier.hpp"
#include "kwlab/char_graph.hpp"
#include "kwlab/transcript.hpp"

using namespace kwlab;

namespace {

struct Micro {
  Relation R = mux_compose(tt_and2(), 2, true);
  HDProtocol P;
  TranscriptContext ctx;
  std::vector<std::uint64_t> V;

  Micro() {
    P = hd_trivial(R);
    ctx = derive_context(P, R, {});
    for (const auto& g : balanced_functions(2)) V.push_back(g.bits);
  }
};

}  // namespace

TEST_CASE("empty-transcript context") {
  Micro m;
  // Alice's column vectors for f = AND2 are always (1,1).
  for (auto gbits : m.V) {
    REQUIRE(m.ctx.A.at(gbits) == std::vector<std::uint32_t>{3});
    CHECK(m.ctx.B.at(gbits).size() == 3);
    CHECK(m.ctx.X_of(gbits, 3).size() == 4);
    // Context consistency: X(g,a) maps into g^-1 entrywise.
    TruthTable g(2, gbits);
    for (auto key : m.ctx.X_of(gbits, 3)) {
      BooleanMatrix X = BooleanMatrix::from_key(2, 2, key);
      for (int i = 0; i < 2; ++i) REQUIRE(g.eval(X.row(i)) == 1);
    }
  }
  // Every function with both composition sides nonempty survives.
  CHECK(m.ctx.V.size() == 14);
}

TEST_CASE("liveness margins at the relaxed point") {
  Micro m;
  LiveParams relaxed;
  relaxed.gamma = 0.5;
  relaxed.kappa = 0;
  auto rep = check_alive(m.ctx, m.V, relaxed);
  CHECK(rep.alive);
  CHECK_FALSE(rep.infeasible);
  CHECK(rep.v_margin == Catch::Approx(2.0));  // |V| = |V0| = 6, slack is m
  CHECK(rep.density_margin == Catch::Approx(0.0));
  CHECK(rep.l_margin == Catch::Approx(0.0));

  LiveParams paper;
  auto rp = check_alive(m.ctx, m.V, paper);
  CHECK(rp.infeasible);
  CHECK_FALSE(rp.alive);
  CHECK(paper.constraint_chain_ok());
}

TEST_CASE("candidate transcript on XOR of XOR") {
  TruthTable f = tt_xor2(), g = tt_xor2();
  Relation comp = compose(f, g, true);
  ProtocolTree Pi = RectGame(comp).extract(true);
  auto res = candidate_transcript(Pi, f, g, true, Pi.depth());
  CHECK((int)res.pi.size() <= Pi.depth());
  CHECK(res.reached_leaf);
  CHECK(res.final_l == 1);
  for (const auto& it : res.iters) {
    CHECK(2 * it.l_after >= it.l_before);
    CHECK(it.max_shrink <= 2.0 + 1e-9);
  }
}

TEST_CASE("popular transcript pigeonhole") {
  std::map<std::uint64_t, std::vector<int>> cands;
  cands[1] = {0, 1};
  cands[2] = {0, 1};
  cands[3] = {1, 0};
  auto res = popular_transcript(cands);
  CHECK(res.pi1 == std::vector<int>{0, 1});
  CHECK(res.V == std::vector<std::uint64_t>{1, 2});
  CHECK(res.distinct == 2);
  CHECK(res.pigeonhole_ok);
  cands[4] = {1, 1, 1};
  CHECK_THROWS_AS(popular_transcript(cands), std::invalid_argument);
}

TEST_CASE("weak intersection and the characteristic graph") {
  // Same matrix under both functions always weak-intersects.
  TruthTable g = tt_xor2();
  BooleanMatrix X(2, 2, {0b01, 0b10});
  CHECK(weak_intersection(2, 2, g, X.key(), g, X.key()));

  Micro m;
  CharGraph G = char_graph(m.ctx, true);
  CHECK(G.vertices.size() == 14);
  // Two copies of the same function are never adjacent to themselves; the
  // matrix asserts symmetry and an empty diagonal.
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    CHECK(G.adj[i][i] == 0);
    for (std::size_t j = 0; j < G.vertices.size(); ++j) REQUIRE(G.adj[i][j] == G.adj[j][i]);
  }
}

TEST_CASE("chromatic depth bound is reported honestly") {
  Micro m;
  auto rep = verify_chromatic_bound(m.P, m.R, {}, true);
  CHECK(rep.pi_len == 0);
  CHECK(rep.holds);
  CHECK(rep.rhs <= rep.depth + 1e-9);
}

TEST_CASE("relaxed sub-graph pipeline") {
  Micro m;
  LiveParams p;
  p.gamma = 1.0;
  p.eps = 0.0;
  p.kappa = 0;
  auto res = build_Gprime(m.ctx, m.V, p);
  REQUIRE(res.ok);
  CHECK(res.Vprime.size() == 6);
  CHECK(res.agree_bullet);
  CHECK(res.thick_bullet);
  CHECK(res.size_bullet);
}

TEST_CASE("pair events") {
  // Same function, complementary vectors: the intersected alphabets vanish,
  // so the cap event holds trivially and the thickness events fail.
  TruthTable g = tt_xor2();
  auto rep = check_pair_events(g, g, 0b11, 0b00, 0b11, {}, {}, 0.0, 2);
  CHECK(rep.e1);
  CHECK(rep.alphabet_sizes == std::vector<int>{0, 0});
  CHECK_FALSE(rep.all_events);
  CHECK(rep.implication_ok);

  // Same function, same vector, full sets: events hold and the sets meet.
  std::vector<std::vector<std::uint32_t>> full;
  for (auto u : g.preimage(1))
    for (auto v : g.preimage(1)) full.push_back({u, v});
  auto rep2 = check_pair_events(g, g, 0b11, 0b11, 0b11, full, full, 0.0, 2);
  CHECK(rep2.intersect);
  CHECK(rep2.implication_ok);

  CHECK_THROWS_AS(check_pair_events(tt_and2(), g, 0, 0, 0, {}, {}, 0.0, 2),
                  std::invalid_argument);
}

TEST_CASE("barrier construction") {
  TruthTable f(4, 0x0117);
  LinearCode C;
  C.length = 4;
  C.basis = {0xF};
  auto res = barrier_construct(f, C, 0, 4);
  CHECK(res.zero_edges);
  CHECK(res.coset_sum_ok);
  CHECK(res.coset_max_ok);
  CHECK(res.pi1.size() == (std::size_t)res.protocol.depth);
  CHECK(res.V.size() == 4);  // balanced g, balanced on both halves
  CHECK_THROWS_AS(barrier_construct(f, C, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(barrier_construct(tt_const(4, 1), C, 0, 4), std::invalid_argument);
}
