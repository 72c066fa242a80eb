#include <catch2/catch_amalgamated.hpp>

#include "kwlab/prefix_thick.hpp"

using namespace kwlab;

namespace {

StringSet full_cube(int m, int q) {
  std::vector<Str> strs;
  long total = 1;
  for (int i = 0; i < m; ++i) total *= q;
  for (long c = 0; c < total; ++c) {
    Str w(m);
    long v = c;
    for (int i = m - 1; i >= 0; --i) {
      w[i] = (int)(v % q);
      v /= q;
    }
    strs.push_back(w);
  }
  return StringSet(AlphabetProfile(m, q), strs);
}

}  // namespace

TEST_CASE("string set basics") {
  StringSet X(AlphabetProfile(2, 3), {{0, 1}, {0, 1}, {2, 2}});
  CHECK(X.size() == 2);  // deduplicated
  CHECK(X.contains({0, 1}));
  CHECK_FALSE(X.contains({1, 0}));
  CHECK_THROWS_AS(StringSet(AlphabetProfile(2, 3), {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(StringSet(AlphabetProfile(2, 3), {{0}}), std::invalid_argument);
}

TEST_CASE("prefix tree structure") {
  StringSet X(AlphabetProfile(2, 3), {{0, 0}, {0, 1}, {1, 2}});
  PrefixNode root = prefix_tree(X);
  CHECK(root.degree() == 2);
  CHECK(root.node_count() == 6);
  CHECK(root.min_degree() == 1);
}

TEST_CASE("thickness") {
  StringSet cube = full_cube(2, 4);
  auto res = is_prefix_thick(cube);  // t = 2
  CHECK(res.thick);
  CHECK(res.witness->size() >= 9);  // at least a 3x3 sub-grid
  for (const auto& w : res.witness->strings) REQUIRE(cube.contains(w));

  // A single chain is never thick above degree 1.
  StringSet chain(AlphabetProfile(3, 2), {{0, 0, 0}});
  CHECK_FALSE(is_prefix_thick(chain, 1).thick);
  CHECK(is_prefix_thick(chain, 0.5).thick);
}

TEST_CASE("winning sets") {
  // Full cube: every degree vector in [q]^m wins.
  StringSet cube = full_cube(3, 2);
  auto W = winning_set(cube);
  CHECK(W.size() == cube.size());
  CHECK(W.count({2, 2, 2}) == 1);
  CHECK(W.count({1, 2, 1}) == 1);

  auto rep = verify_winning_size(cube);
  CHECK(rep.identity);
  CHECK(rep.oracle_checked);
  CHECK(rep.oracle_agrees);

  StringSet empty(AlphabetProfile(2, 2), {});
  CHECK(winning_set(empty).empty());
}

TEST_CASE("projection families") {
  StringSet cube = full_cube(3, 2);
  auto tp = thick_projections(cube, 0.0);
  CHECK(tp.family.size() == 8);  // every projection of the cube is thick
  CHECK(tp.bound_holds);

  // A single string only keeps the empty projection at t = q/2 = 1.
  StringSet single(AlphabetProfile(3, 2), {{0, 1, 0}});
  auto tps = thick_projections(single, 0.0);
  CHECK(tps.family.size() == 1);
  CHECK(tps.family[0] == 0);
  CHECK(tps.bound_holds);
}

TEST_CASE("thick sets intersect") {
  // Two 3-of-4 sub-grids of Sigma^2 with q=4.
  std::vector<Str> a, b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a.push_back({i, j});
      b.push_back({i + 1, j + 1});
    }
  StringSet A(AlphabetProfile(2, 4), a), B(AlphabetProfile(2, 4), b);
  auto w = intersect_witness(A, B);
  REQUIRE(w.has_value());
  CHECK(A.contains(*w));
  CHECK(B.contains(*w));

  // A thin set yields no witness.
  StringSet thin(AlphabetProfile(2, 4), {{0, 0}});
  CHECK_FALSE(intersect_witness(A, thin).has_value());
}
