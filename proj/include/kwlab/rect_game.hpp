#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/protocol.hpp"
#include "kwlab/relation.hpp"

namespace kwlab {

struct SearchBudget {
  int max_side = 16;           // largest domain size per side
  std::size_t max_memo = 60'000'000;  // memo entries before aborting
};

// Exact minimax over rectangles: cc(X x Y) = 0 if some single output solves
// the whole rectangle, else 1 + min over speaker and bipartition of the max
// child; protocol size replaces max with sum and leaves cost 1. Memoized on
// (xmask, ymask). Empty rectangles cost 0 bits / 1 leaf by convention but are
// never reached from nonempty splits (bipartitions use proper submasks).
class RectGame {
 public:
  RectGame(const Relation& R, SearchBudget budget = {}) : R_(R), budget_(budget) {
    if ((int)R.x_size > budget.max_side || (int)R.y_size > budget.max_side)
      throw BudgetExceeded("RectGame: side exceeds budget (" + std::to_string(R.x_size) +
                           "x" + std::to_string(R.y_size) + ")");
    if (R.x_size == 0 || R.y_size == 0)
      throw std::invalid_argument("RectGame: empty relation side");
    // valid_[o][xi] = mask of yi for which output o is correct.
    valid_.assign(R.out_size, std::vector<std::uint32_t>(R.x_size, 0));
    for (std::size_t o = 0; o < R.out_size; ++o)
      for (std::size_t xi = 0; xi < R.x_size; ++xi)
        for (std::size_t yi = 0; yi < R.y_size; ++yi)
          if (R.solves(xi, yi, o)) valid_[o][xi] |= 1u << yi;
    fullx_ = (1u << R.x_size) - 1;
    fully_ = (1u << R.y_size) - 1;
  }

  int exact_cc() { return cc(fullx_, fully_); }
  int exact_size() { return size(fullx_, fully_); }

  // Smallest output solving the whole sub-rectangle, or kNoOutput.
  std::size_t monochromatic_output(std::uint32_t xm, std::uint32_t ym) const {
    for (std::size_t o = 0; o < R_.out_size; ++o) {
      bool ok = true;
      for (std::size_t xi = 0; xi < R_.x_size && ok; ++xi)
        if ((xm >> xi) & 1)
          if ((valid_[o][xi] & ym) != ym) ok = false;
      if (ok) return o;
    }
    return kNoOutput;
  }

  int cc(std::uint32_t xm, std::uint32_t ym) {
    if (xm == 0 || ym == 0) return 0;
    std::uint64_t key = (std::uint64_t(xm) << 32) | ym;
    auto it = cc_memo_.find(key);
    if (it != cc_memo_.end()) return it->second;
    if (cc_memo_.size() > budget_.max_memo) throw BudgetExceeded("RectGame: memo limit");
    int best;
    if (monochromatic_output(xm, ym) != kNoOutput) {
      best = 0;
    } else {
      best = std::numeric_limits<int>::max() / 2;
      // Fix the lowest set bit on Alice's side to kill the mirror symmetry;
      // s runs over proper submasks of the rest, including the empty one.
      std::uint32_t xrest = xm & (xm - 1), xlow = xm & ~xrest;
      if (xrest)
        for (std::uint32_t s = (xrest - 1) & xrest;; s = (s - 1) & xrest) {
          int v0 = cc(s | xlow, ym);
          if (v0 + 1 < best)
            best = std::min(best, 1 + std::max(v0, cc(xm & ~(s | xlow), ym)));
          if (!s) break;
        }
      std::uint32_t yrest = ym & (ym - 1), ylow = ym & ~yrest;
      if (yrest)
        for (std::uint32_t s = (yrest - 1) & yrest;; s = (s - 1) & yrest) {
          int v0 = cc(xm, s | ylow);
          if (v0 + 1 < best)
            best = std::min(best, 1 + std::max(v0, cc(xm, ym & ~(s | ylow))));
          if (!s) break;
        }
    }
    cc_memo_[key] = best;
    return best;
  }

  int size(std::uint32_t xm, std::uint32_t ym) {
    if (xm == 0 || ym == 0) return 1;
    std::uint64_t key = (std::uint64_t(xm) << 32) | ym;
    auto it = size_memo_.find(key);
    if (it != size_memo_.end()) return it->second;
    if (size_memo_.size() > budget_.max_memo) throw BudgetExceeded("RectGame: memo limit");
    int best;
    if (monochromatic_output(xm, ym) != kNoOutput) {
      best = 1;
    } else {
      best = std::numeric_limits<int>::max() / 2;
      std::uint32_t xrest = xm & (xm - 1), xlow = xm & ~xrest;
      if (xrest)
        for (std::uint32_t s = (xrest - 1) & xrest;; s = (s - 1) & xrest) {
          int v0 = size(s | xlow, ym);
          if (v0 < best) best = std::min(best, v0 + size(xm & ~(s | xlow), ym));
          if (!s) break;
        }
      std::uint32_t yrest = ym & (ym - 1), ylow = ym & ~yrest;
      if (yrest)
        for (std::uint32_t s = (yrest - 1) & yrest;; s = (s - 1) & yrest) {
          int v0 = size(xm, s | ylow);
          if (v0 < best) best = std::min(best, v0 + size(xm, ym & ~(s | ylow)));
          if (!s) break;
        }
    }
    size_memo_[key] = best;
    return best;
  }

  // An optimal protocol tree, depth-optimal or size-optimal. Ties are broken
  // deterministically: Alice before Bob, then the numerically smallest
  // submask containing the lowest element of the split side.
  ProtocolTree extract(bool minimize_depth = true) {
    ProtocolTree P;
    P.root = extract_node(fullx_, fully_, minimize_depth);
    return P;
  }

 private:
  ProtoNodePtr extract_node(std::uint32_t xm, std::uint32_t ym, bool min_depth) {
    auto v = std::make_shared<ProtoNode>();
    v->xmask = xm;
    v->ymask = ym;
    std::size_t mono = monochromatic_output(xm, ym);
    if (mono != kNoOutput || xm == 0 || ym == 0) {
      v->is_leaf = true;
      v->output = (mono != kNoOutput) ? mono : 0;
      return v;
    }
    int target = min_depth ? cc(xm, ym) : size(xm, ym);
    // Re-enumerate in ascending submask order to pick the canonical split.
    std::uint32_t xrest = xm & (xm - 1), xlow = xm & ~xrest;
    for (std::uint32_t t = 0;; t = ((t | ~xrest) + 1) & xrest) {
      std::uint32_t s0 = t | xlow, s1 = xm & ~s0;
      if (s1 != 0) {
        int val = min_depth ? 1 + std::max(cc(s0, ym), cc(s1, ym))
                            : size(s0, ym) + size(s1, ym);
        if (val == target) {
          v->owner = 0;
          v->child[0] = extract_node(s0, ym, min_depth);
          v->child[1] = extract_node(s1, ym, min_depth);
          return v;
        }
      }
      if (t == xrest) break;
    }
    std::uint32_t yrest = ym & (ym - 1), ylow = ym & ~yrest;
    for (std::uint32_t t = 0;; t = ((t | ~yrest) + 1) & yrest) {
      std::uint32_t s0 = t | ylow, s1 = ym & ~s0;
      if (s1 != 0) {
        int val = min_depth ? 1 + std::max(cc(xm, s0), cc(xm, s1))
                            : size(xm, s0) + size(xm, s1);
        if (val == target) {
          v->owner = 1;
          v->child[0] = extract_node(xm, s0, min_depth);
          v->child[1] = extract_node(xm, s1, min_depth);
          return v;
        }
      }
      if (t == yrest) break;
    }
    throw std::logic_error("RectGame::extract: no split achieves the optimum");
  }

  const Relation R_;
  SearchBudget budget_;
  std::vector<std::vector<std::uint32_t>> valid_;
  std::uint32_t fullx_ = 0, fully_ = 0;
  std::unordered_map<std::uint64_t, int> cc_memo_, size_memo_;
};

struct FormulaComplexity {
  int size = 0;
  int depth = kNegInfDepth;
};

// L and D of the rectangle A x B via the game characterization; an empty
// side gives the constant-formula values (L = 0, D = -inf).
inline FormulaComplexity formula_complexity_rect(const std::vector<std::uint32_t>& A,
                                                 const std::vector<std::uint32_t>& B,
                                                 int n_bits, SearchBudget budget = {}) {
  if (A.empty() || B.empty()) return {0, kNegInfDepth};
  RectGame game(kw_rectangle(A, B, n_bits), budget);
  return {game.exact_size(), game.exact_cc()};
}

struct SubadditivityReport {
  int whole = 0, part0 = 0, part1 = 0;
  bool holds = false;
};

// L(X x Y) <= L(X0 x Y) + L(X1 x Y) for a bipartition X = X0 + X1.
inline SubadditivityReport check_subadditivity(const std::vector<std::uint32_t>& X0,
                                               const std::vector<std::uint32_t>& X1,
                                               const std::vector<std::uint32_t>& Y,
                                               int n_bits, SearchBudget budget = {}) {
  std::vector<std::uint32_t> X = X0;
  X.insert(X.end(), X1.begin(), X1.end());
  SubadditivityReport r;
  r.whole = formula_complexity_rect(X, Y, n_bits, budget).size;
  r.part0 = formula_complexity_rect(X0, Y, n_bits, budget).size;
  r.part1 = formula_complexity_rect(X1, Y, n_bits, budget).size;
  r.holds = r.whole <= r.part0 + r.part1;
  return r;
}

namespace detail {

inline std::vector<std::uint32_t> subset_by_mask(const std::vector<std::uint32_t>& A,
                                                 std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < A.size(); ++i)
    if ((mask >> i) & 1) out.push_back(A[i]);
  return out;
}

}  // namespace detail

// A is rho-fortified against B if every nonempty subset A' keeps
// L(A' x B) / L(A x B) >= rho * |A'| / |A|.
inline bool is_fortified(const std::vector<std::uint32_t>& A,
                         const std::vector<std::uint32_t>& B, int n_bits, double rho,
                         SearchBudget budget = {}) {
  if (A.empty() || B.empty()) throw std::invalid_argument("is_fortified: empty side");
  if (A.size() > 12) throw BudgetExceeded("is_fortified: |A| > 12");
  RectGame game(kw_rectangle(A, B, n_bits), budget);
  std::uint32_t fullx = (1u << A.size()) - 1, fully = (1u << B.size()) - 1;
  int whole = game.size(fullx, fully);
  for (std::uint32_t sub = 1; sub <= fullx; ++sub) {
    int part = game.size(sub, fully);
    if (part * (double)A.size() + 1e-9 < rho * popcount64(sub) * whole) return false;
  }
  return true;
}

struct FortifiedSubset {
  std::vector<std::uint32_t> subset;
  std::uint32_t mask = 0;
  int complexity = 0;        // L(subset x B)
  int whole_complexity = 0;  // L(A x B)
};

// Among all rho-fortified nonempty subsets of A, the one maximizing
// L(A' x B) (ties to the numerically smallest mask). With rho = 1/(4n) the
// winner is guaranteed to keep at least a quarter of L(A x B); the caller
// can check `complexity * 4 >= whole_complexity`.
inline FortifiedSubset find_fortified_subset(const std::vector<std::uint32_t>& A,
                                             const std::vector<std::uint32_t>& B, int n_bits,
                                             double rho, SearchBudget budget = {}) {
  if (A.empty() || B.empty()) throw std::invalid_argument("find_fortified_subset: empty side");
  if (A.size() > 12) throw BudgetExceeded("find_fortified_subset: |A| > 12");
  RectGame game(kw_rectangle(A, B, n_bits), budget);
  std::uint32_t fullx = (1u << A.size()) - 1, fully = (1u << B.size()) - 1;
  FortifiedSubset best;
  best.whole_complexity = game.size(fullx, fully);
  best.complexity = -1;
  for (std::uint32_t cand = 1; cand <= fullx; ++cand) {
    int cl = game.size(cand, fully);
    if (cl <= best.complexity) continue;
    bool fortified = true;
    for (std::uint32_t sub = cand; sub; sub = (sub - 1) & cand) {
      int part = game.size(sub, fully);
      if (part * (double)popcount64(cand) + 1e-9 < rho * popcount64(sub) * cl) {
        fortified = false;
        break;
      }
    }
    if (fortified) {
      best.mask = cand;
      best.complexity = cl;
    }
  }
  if (best.complexity < 0) throw std::logic_error("find_fortified_subset: none found");
  best.subset = detail::subset_by_mask(A, best.mask);
  return best;
}

}  // namespace kwlab
