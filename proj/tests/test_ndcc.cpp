#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "kwlab/cover.hpp"
#include "kwlab/graph.hpp"

using namespace kwlab;

namespace {

SimpleGraph complete_graph(int n) {
  SimpleGraph G(n);
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) G.add_edge(u, v);
  return G;
}

SimpleGraph cycle_graph(int n) {
  SimpleGraph G(n);
  for (int v = 0; v < n; ++v) G.add_edge(v, (v + 1) % n);
  return G;
}

}  // namespace

TEST_CASE("clique, independence, chromatic") {
  SimpleGraph K4 = complete_graph(4);
  CHECK(clique_number(K4) == 4);
  CHECK(independence_number(K4) == 1);
  CHECK(chromatic_number(K4) == 4);

  SimpleGraph C5 = cycle_graph(5);
  CHECK(clique_number(C5) == 2);
  CHECK(independence_number(C5) == 2);
  CHECK(chromatic_number(C5) == 3);
  CHECK(is_k_colorable(C5, 3));
  CHECK_FALSE(is_k_colorable(C5, 2));

  SimpleGraph empty(3);
  CHECK(chromatic_number(empty) == 1);
}

TEST_CASE("graph parsing") {
  std::istringstream in("# comment\n3\n0 1\n1 2\n");
  SimpleGraph G = parse_edge_list(in);
  CHECK(G.n == 3);
  CHECK(G.edge_count() == 2);
  CHECK(G.has_edge(0, 1));
  CHECK_FALSE(G.has_edge(0, 2));

  // K3 in graph6: n=3 -> 'B', upper triangle bits 11 0 -> 'w'.
  SimpleGraph K3 = parse_graph6("Bw");
  CHECK(K3.n == 3);
  CHECK(K3.edge_count() == 3);
}

TEST_CASE("rectangle covers") {
  PromiseMatrix M(2, 2);
  M.cell[0][0] = 1;
  M.cell[1][1] = 1;
  M.cell[0][1] = 0;
  M.cell[1][0] = 0;
  auto acc = accept_cover(M);
  CHECK(acc.cover_number == 2);
  CHECK(acc.ncc == Catch::Approx(1.0));
  auto rej = reject_cover(M);
  CHECK(rej.cover_number == 2);
  CHECK(verify_ncc_vs_concc(M).holds);
}

TEST_CASE("graph equality cover equals chromatic number") {
  for (int n = 2; n <= 5; ++n) {
    auto rep = verify_graph_eq_ncc(complete_graph(n));
    CHECK(rep.chromatic == n);
    CHECK(rep.cover_number == n);
    CHECK(rep.matches);
  }
  auto c5 = verify_graph_eq_ncc(cycle_graph(5));
  CHECK(c5.chromatic == 3);
  CHECK(c5.matches);
}

TEST_CASE("graph inequality bracket") {
  auto k8 = verify_graph_ineq_bounds(complete_graph(8));
  CHECK_FALSE(k8.vacuous);
  CHECK(k8.holds);
  auto lonely = verify_graph_ineq_bounds(SimpleGraph(3));
  CHECK(lonely.vacuous);
  CHECK(lonely.holds);
}
