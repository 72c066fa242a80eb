#include <catch2/catch_amalgamated.hpp>

#include "kwlab/entropy.hpp"
#include "kwlab/formula.hpp"
#include "kwlab/linear_code.hpp"
#include "kwlab/truth_table.hpp"

using namespace kwlab;

TEST_CASE("truth table conventions") {
  TruthTable andf = tt_and2();
  CHECK(andf.eval(0b11) == 1);
  CHECK(andf.eval(0b10) == 0);
  CHECK(andf.preimage(1) == std::vector<std::uint32_t>{3});
  CHECK(andf.preimage(0).size() == 3);
  CHECK(andf.to_hex() == "8");
  CHECK(TruthTable::from_hex(2, "8") == andf);
  CHECK_THROWS_AS(TruthTable::from_hex(2, "g"), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable(7, 0), std::invalid_argument);
  CHECK(tt_const(3, 1).is_constant());
  CHECK_FALSE(tt_xor2().is_constant());
  CHECK(tt_xor2().is_balanced());
}

TEST_CASE("function enumeration counts") {
  CHECK(all_functions(2).size() == 16);
  CHECK(balanced_functions(2).size() == 6);
  CHECK(balanced_functions(3).size() == 70);
}

TEST_CASE("boolean matrix layout") {
  BooleanMatrix X(2, 2, {0b10, 0b01});
  CHECK(X.entry(0, 0) == 1);
  CHECK(X.entry(0, 1) == 0);
  CHECK(X.entry(1, 0) == 0);
  CHECK(X.entry(1, 1) == 1);
  CHECK(X.key() == 0b1001);
  CHECK(BooleanMatrix::from_key(2, 2, 0b1001) == X);
  CHECK(X.to_string() == "1001");

  ColumnVector a = apply_rowwise(tt_or2(), X);
  CHECK(a.length == 2);
  CHECK(a.entry(0) == 1);
  CHECK(a.entry(1) == 1);
  CHECK(eval_composition(tt_and2(), tt_or2(), X) == 1);
}

TEST_CASE("entropy and binomial") {
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0));
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(8, 4) == 70);
  auto b = binomial_entropy_bounds(10, 3);
  CHECK(b.lower <= (double)binomial(10, 3));
  CHECK((double)binomial(10, 3) <= b.upper);
}

TEST_CASE("formula basics") {
  auto f = Formula::gate(Formula::kAnd, Formula::literal(1, false), Formula::literal(2, false));
  CHECK(f->size() == 2);
  CHECK(f->depth() == 1);
  CHECK(f->table(2) == tt_and2());
  CHECK(Formula::constant(1)->size() == 0);
  CHECK(Formula::constant(1)->depth() == kNegInfDepth);
}

TEST_CASE("parity formula") {
  for (int n = 1; n <= 6; ++n) {
    auto F = build_parity_formula(n);
    CHECK(F->size() <= 4 * n * n);
    for (std::uint32_t x = 0; x < (1u << n); ++x)
      REQUIRE(F->eval(x, n) == (int)(popcount64(x) & 1));
  }
}

TEST_CASE("formula oracle on two-bit functions") {
  auto and_res = formula_oracle(tt_and2());
  CHECK(and_res.size == 2);
  CHECK(and_res.depth == 1);
  auto xor_res = formula_oracle(tt_xor2());
  CHECK(xor_res.size == 4);
  CHECK(xor_res.depth == 2);
  auto const_res = formula_oracle(tt_const(2, 0));
  CHECK(const_res.size == 0);
  CHECK(const_res.depth == kNegInfDepth);
}

TEST_CASE("linear codes") {
  LinearCode rep;
  rep.length = 4;
  rep.basis = {0xF};
  CHECK(rep.min_distance() == 4);
  CHECK(rep.codewords().size() == 2);
  CHECK(rep.contains(0xF));
  CHECK_FALSE(rep.contains(0x3));
  CHECK(cosets(rep).size() == 8);

  LinearCode C = find_linear_code(6, 3);
  CHECK(C.min_distance() >= 3);
  CHECK(C.dimension() >= 1);
  CHECK(C.dimension() <= 6 - 3 + 1);
  CHECK_THROWS_AS(find_linear_code(4, 5), std::invalid_argument);
}
