#include <catch2/catch_amalgamated.hpp>

#include "kwlab/formula.hpp"
#include "kwlab/protocol.hpp"
#include "kwlab/rect_game.hpp"

using namespace kwlab;

TEST_CASE("exact cc and size match formula depth and size") {
  struct Row {
    TruthTable f;
    int size, depth;
  };
  for (const Row& r : {Row{tt_and2(), 2, 1}, Row{tt_or2(), 2, 1}, Row{tt_xor2(), 4, 2}}) {
    RectGame game(kw_of_function(r.f));
    CHECK(game.exact_cc() == r.depth);
    CHECK(game.exact_size() == r.size);
  }
}

TEST_CASE("extracted protocols validate and are optimal") {
  for (const auto& f : all_functions(2)) {
    if (f.is_constant()) continue;
    Relation R = kw_of_function(f);
    RectGame game(R);
    ProtocolTree Pd = game.extract(true);
    CHECK(validate_protocol(Pd, R).ok());
    CHECK(Pd.depth() == game.exact_cc());
    ProtocolTree Ps = game.extract(false);
    CHECK(validate_protocol(Ps, R).ok());
    CHECK(Ps.leaf_count() == game.exact_size());
  }
}

TEST_CASE("formula complexity of rectangles") {
  auto fc = formula_complexity_rect({0b11}, {0b00, 0b01, 0b10}, 2);
  CHECK(fc.size == 2);
  CHECK(fc.depth == 1);
  auto empty = formula_complexity_rect({}, {0b00}, 2);
  CHECK(empty.size == 0);
  CHECK(empty.depth == kNegInfDepth);
}

TEST_CASE("budget enforcement") {
  SearchBudget tight;
  tight.max_side = 2;
  CHECK_THROWS_AS(RectGame(kw_of_function(tt_and2()), tight), BudgetExceeded);
}

TEST_CASE("subadditivity of protocol size") {
  auto f = tt_xor2();
  auto zeros = f.preimage(0);
  auto rep = check_subadditivity({0b01}, {0b10}, zeros, 2);
  CHECK(rep.holds);
  CHECK(rep.whole <= rep.part0 + rep.part1);
}

TEST_CASE("fortified subsets") {
  auto f = tt_xor2();
  auto A = f.preimage(1), B = f.preimage(0);
  CHECK(is_fortified(A, B, 2, 1.0 / 8));
  auto best = find_fortified_subset(A, B, 2, 1.0 / 8);
  CHECK(best.complexity >= 1);
  CHECK(best.complexity * 4 >= best.whole_complexity);
  CHECK_THROWS_AS(is_fortified({}, B, 2, 0.5), std::invalid_argument);
}

TEST_CASE("obvious protocol validates and meets the depth budget") {
  TruthTable f = tt_and2(), g = tt_xor2();
  Relation comp = compose(f, g, false);
  ProtocolTree Pf = RectGame(kw_of_function(f)).extract(true);
  ProtocolTree Pg = RectGame(kw_of_function(g)).extract(true);
  ProtocolTree P = obvious_protocol(comp, g, Pf, Pg);
  CHECK(validate_protocol(P, comp).ok());
  CHECK(P.depth() <= Pf.depth() + Pg.depth());

  Relation strong = compose(f, g, true);
  ProtocolTree Ps = obvious_protocol(strong, g, Pf, Pg);
  CHECK(validate_protocol(Ps, strong).ok());
}
