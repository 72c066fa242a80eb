#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/graph.hpp"

namespace kwlab {

// A promise communication matrix: each cell is an accept (1), reject (0), or
// outside the promise (-1, unconstrained).
struct PromiseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<int>> cell;

  PromiseMatrix() = default;
  PromiseMatrix(int r, int c) : rows(r), cols(c), cell(r, std::vector<int>(c, -1)) {
    if (r < 1 || c < 1 || r > 20 || c > 20)
      throw std::invalid_argument("PromiseMatrix: dimensions in [1,20] required");
  }
};

struct Rect {
  std::uint32_t rowmask = 0, colmask = 0;
};

namespace detail {

// All maximal rectangles avoiding cells of the given value. A rectangle is
// S x T(S) where T(S) is the largest column set compatible with S; it is kept
// when S is in turn the largest row set compatible with T(S).
inline std::vector<Rect> maximal_rectangles_avoiding(const PromiseMatrix& M, int avoid) {
  std::vector<std::uint32_t> row_ok(M.rows, 0);
  for (int r = 0; r < M.rows; ++r)
    for (int c = 0; c < M.cols; ++c)
      if (M.cell[r][c] != avoid) row_ok[r] |= 1u << c;
  std::vector<Rect> rects;
  std::uint32_t fullc = (1u << M.cols) - 1;
  for (std::uint32_t S = 1; S < (1u << M.rows); ++S) {
    std::uint32_t T = fullc;
    for (int r = 0; r < M.rows; ++r)
      if ((S >> r) & 1) T &= row_ok[r];
    if (T == 0) continue;
    std::uint32_t Smax = 0;
    for (int r = 0; r < M.rows; ++r)
      if ((row_ok[r] & T) == T) Smax |= 1u << r;
    if (Smax == S) rects.push_back({S, T});
  }
  return rects;
}

struct CoverState {
  const std::vector<std::uint64_t>* rect_cells;
  std::uint64_t target;
  int best;
};

inline void cover_search(CoverState& st, std::uint64_t uncovered, int used) {
  if (uncovered == 0) {
    st.best = std::min(st.best, used);
    return;
  }
  if (used + 1 >= st.best) return;
  // Branch on the first uncovered cell: some rectangle must contain it.
  int cell = __builtin_ctzll(uncovered);
  for (auto rc : *st.rect_cells)
    if ((rc >> cell) & 1) cover_search(st, uncovered & ~rc, used + 1);
}

}  // namespace detail

struct CoverResult {
  int cover_number = 0;  // minimum number of rectangles
  double ncc = 0;        // log2 of the cover number (real valued)
};

// Minimum number of rectangles free of `avoid`-cells that together cover all
// cells of value `target`. Exact branch and bound over maximal rectangles.
inline CoverResult min_cover(const PromiseMatrix& M, int target, int avoid) {
  std::vector<std::pair<int, int>> targets;
  for (int r = 0; r < M.rows; ++r)
    for (int c = 0; c < M.cols; ++c)
      if (M.cell[r][c] == target) targets.push_back({r, c});
  if (targets.empty()) return {0, 0};
  if (targets.size() > 64) throw BudgetExceeded("min_cover: too many target cells");
  auto rects = detail::maximal_rectangles_avoiding(M, avoid);
  std::vector<std::uint64_t> rect_cells;
  for (const auto& R : rects) {
    std::uint64_t bits = 0;
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (((R.rowmask >> targets[t].first) & 1) && ((R.colmask >> targets[t].second) & 1))
        bits |= 1ull << t;
    if (bits) rect_cells.push_back(bits);
  }
  std::uint64_t all = (targets.size() == 64) ? ~0ull : ((1ull << targets.size()) - 1);
  std::uint64_t reachable = 0;
  for (auto rc : rect_cells) reachable |= rc;
  if (reachable != all)
    throw std::logic_error("min_cover: some target cell lies in no valid rectangle");
  detail::CoverState st{&rect_cells, all, (int)targets.size() + 1};
  detail::cover_search(st, all, 0);
  CoverResult res;
  res.cover_number = st.best;
  res.ncc = (st.best <= 1) ? 0.0 : std::log2((double)st.best);
  return res;
}

// One-sided covers: accept-side cover avoids reject cells and vice versa.
inline CoverResult accept_cover(const PromiseMatrix& M) { return min_cover(M, 1, 0); }
inline CoverResult reject_cover(const PromiseMatrix& M) { return min_cover(M, 0, 1); }

inline int min_rect_cover(const PromiseMatrix& M) { return accept_cover(M).cover_number; }

// Equality restricted to a graph: players hold vertices, the promise is that
// distinct vertices are adjacent. Accept on the diagonal.
inline PromiseMatrix graph_eq_matrix(const SimpleGraph& G) {
  PromiseMatrix M(G.n, G.n);
  for (int u = 0; u < G.n; ++u) {
    M.cell[u][u] = 1;
    for (int v = 0; v < G.n; ++v)
      if (G.has_edge(u, v)) M.cell[u][v] = 0;
  }
  return M;
}

// Inequality restricted to a graph: accept on edges, reject on the diagonal.
inline PromiseMatrix graph_ineq_matrix(const SimpleGraph& G) {
  PromiseMatrix M(G.n, G.n);
  for (int u = 0; u < G.n; ++u) {
    M.cell[u][u] = 0;
    for (int v = 0; v < G.n; ++v)
      if (G.has_edge(u, v)) M.cell[u][v] = 1;
  }
  return M;
}

struct GraphEqReport {
  int chromatic = 0;
  int cover_number = 0;
  bool matches = false;  // cover number equals chi(G)
};

// The accept cover number of graph equality equals the chromatic number.
inline GraphEqReport verify_graph_eq_ncc(const SimpleGraph& G) {
  GraphEqReport rep;
  rep.chromatic = chromatic_number(G);
  rep.cover_number = accept_cover(graph_eq_matrix(G)).cover_number;
  rep.matches = (rep.cover_number == rep.chromatic);
  return rep;
}

struct GraphIneqReport {
  int chromatic = 0;
  int cover_number = 0;
  double ncc = 0;
  double loglog_chi = 0;
  bool vacuous = false;  // chi(G) = 1: the bound says nothing
  bool holds = false;    // loglog chi <= ncc <= loglog chi + 1
};

// Nondeterministic complexity of graph inequality sits within one bit of
// log log of the chromatic number. Real-valued logs throughout; chi = 1 is
// reported as vacuous rather than asserted.
inline GraphIneqReport verify_graph_ineq_bounds(const SimpleGraph& G) {
  GraphIneqReport rep;
  rep.chromatic = chromatic_number(G);
  CoverResult cov = accept_cover(graph_ineq_matrix(G));
  rep.cover_number = cov.cover_number;
  rep.ncc = cov.ncc;
  if (rep.chromatic < 2) {
    rep.vacuous = true;
    rep.holds = true;
    return rep;
  }
  double ll = std::log2(std::log2((double)rep.chromatic));
  rep.loglog_chi = ll;
  rep.holds = (ll <= rep.ncc + 1e-9) && (rep.ncc <= ll + 1 + 1e-9);
  return rep;
}

struct NccConccReport {
  int accept_cover_number = 0;
  int reject_cover_number = 0;
  bool holds = false;  // accept covers <= 2^(reject cover number)
};

// Count form of "nondeterministic is at most exponential in co-nondeterministic".
inline NccConccReport verify_ncc_vs_concc(const PromiseMatrix& M) {
  NccConccReport rep;
  rep.accept_cover_number = accept_cover(M).cover_number;
  rep.reject_cover_number = reject_cover(M).cover_number;
  double bound = std::pow(2.0, rep.reject_cover_number);
  rep.holds = rep.accept_cover_number <= bound + 1e-9;
  return rep;
}

}  // namespace kwlab
