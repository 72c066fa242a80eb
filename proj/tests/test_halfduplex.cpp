#include <catch2/catch_amalgamated.hpp>

#include "kwlab/half_duplex.hpp"
#include "kwlab/rect_game.hpp"

using namespace kwlab;

TEST_CASE("lifted standard protocols stay classical and correct") {
  for (const TruthTable& f : {tt_and2(), tt_xor2()}) {
    Relation R = kw_of_function(f);
    ProtocolTree P = RectGame(R).extract(true);
    HDProtocol H = lift_standard(P, R);
    CHECK(H.depth == P.depth());
    CHECK(validate_hd(H).ok());
    CHECK(hd_solves(H, R));
    for (std::size_t xi = 0; xi < R.x_size; ++xi)
      for (std::size_t yi = 0; yi < R.y_size; ++yi) {
        auto traces = execute_all(H, xi, yi);
        REQUIRE(traces.size() == 1);
        REQUIRE(traces[0].all_classical());
      }
  }
}

TEST_CASE("trivial protocol and consistency sets") {
  Relation R = mux_compose(tt_and2(), 2, true);
  HDProtocol P = hd_trivial(R);
  auto cs = consistent_inputs(P, {});
  CHECK(cs.x.size() == R.x_size);
  CHECK(cs.y.size() == R.y_size);
  CHECK_THROWS_AS(consistent_inputs(P, {0}), std::invalid_argument);
}

TEST_CASE("reduction protocol on AND2") {
  TruthTable f = tt_and2();
  std::map<std::uint64_t, ProtocolTree> protocols;
  int c = 0;
  for (const auto& g : all_functions(2)) {
    if (g.is_constant()) continue;
    Relation comp = compose(f, g, true);
    protocols[g.bits] = RectGame(comp).extract(true);
    c = std::max(c, protocols[g.bits].depth());
  }
  HDProtocol P = reduction_transform(f, 2, protocols, true);
  Relation R = mux_compose(f, 2, true);
  CHECK(P.depth == c + 2 + 3);
  CHECK(validate_hd(P).ok());
  CHECK(hd_solves(P, R));
  CHECK(is_partially_hd(P, R));
}
