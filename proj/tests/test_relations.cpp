#include <catch2/catch_amalgamated.hpp>

#include "kwlab/relation.hpp"

using namespace kwlab;

TEST_CASE("kw rectangle basics") {
  Relation R = kw_rectangle({0b11}, {0b00, 0b01}, 2);
  CHECK(R.x_size == 1);
  CHECK(R.y_size == 2);
  CHECK(R.out_size == 2);
  CHECK(R.solves(0, 0, 0));      // 11 vs 00 differ at x_1
  CHECK(R.solves(0, 1, 0));      // 11 vs 01 differ at x_1
  CHECK_FALSE(R.solves(0, 1, 1));
  CHECK_NOTHROW(R.check_totality());
  CHECK_THROWS_AS(kw_rectangle({1}, {1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(kw_rectangle({}, {1}, 2), std::invalid_argument);
}

TEST_CASE("kw of function") {
  Relation R = kw_of_function(tt_and2());
  CHECK(R.x_size == 1);
  CHECK(R.y_size == 3);
  CHECK(R.n_bits == 2);
  CHECK_THROWS_AS(kw_of_function(tt_const(2, 1)), std::invalid_argument);
  Relation R2 = kw_of_function(tt_and2());
  CHECK(R.content_hash() == R2.content_hash());
}

TEST_CASE("composition relation") {
  Relation R = compose(tt_and2(), tt_or2(), false);
  CHECK(R.x_size + R.y_size == 16);
  CHECK(R.out_size == 4);
  // X with OR rows (1,1): 9 matrices have both rows nonzero.
  CHECK(R.x_size == 9);

  Relation S = compose(tt_and2(), tt_or2(), true);
  CHECK(S.x_size == R.x_size);
  // Strong validity is a sub-predicate of standard validity.
  for (std::size_t xi = 0; xi < S.x_size; ++xi)
    for (std::size_t yi = 0; yi < S.y_size; ++yi)
      for (std::size_t o = 0; o < S.out_size; ++o)
        if (S.solves(xi, yi, o)) REQUIRE(R.solves(xi, yi, o));
  CHECK_THROWS_AS(compose(tt_and2(), tt_const(2, 0), false), std::invalid_argument);
}

TEST_CASE("mux relation") {
  Relation R = mux(2);
  CHECK(R.x_size == 32);  // sum over g of |g^-1(1)|
  CHECK(R.y_size == 32);
  CHECK(R.out_size == 3);
  CHECK(R.bottom_output == 2);
  // bot is valid exactly when the functions differ.
  for (std::size_t xi = 0; xi < R.x_size; ++xi)
    for (std::size_t yi = 0; yi < R.y_size; ++yi)
      REQUIRE(R.solves(xi, yi, R.bottom_output) == !(R.x_mux[xi].g == R.y_mux[yi].g));
  CHECK_THROWS_AS(mux(4), BudgetExceeded);
}

TEST_CASE("mux composition") {
  Relation R = mux_compose(tt_and2(), 2, true);
  CHECK(R.x_size + R.y_size == 16 * 16);
  CHECK(R.out_size == 5);
  CHECK(R.bottom_output == 4);
  CHECK(R.x_size == 80);  // sum over g of |g^-1(1)|^2
  CHECK_NOTHROW(R.check_totality());
  CHECK_THROWS_AS(mux_compose(TruthTable(4, 0x0117), 2, true), BudgetExceeded);
  CHECK_NOTHROW(mux_compose(TruthTable(4, 0x0117), 2, true, 8));
}
