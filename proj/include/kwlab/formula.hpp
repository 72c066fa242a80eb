#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/truth_table.hpp"

namespace kwlab {

// De Morgan formula: binary AND/OR tree over literals x_i / !x_i, plus a
// distinguished constant marker (size 0, depth -inf).
struct Formula {
  enum Kind { kConst, kLit, kAnd, kOr };
  Kind kind = kConst;
  int value = 0;      // for kConst
  int var = 0;        // for kLit, 1-based
  bool negated = false;
  std::shared_ptr<Formula> left, right;

  static std::shared_ptr<Formula> constant(int v) {
    auto f = std::make_shared<Formula>();
    f->kind = kConst;
    f->value = v;
    return f;
  }
  static std::shared_ptr<Formula> literal(int var, bool negated) {
    auto f = std::make_shared<Formula>();
    f->kind = kLit;
    f->var = var;
    f->negated = negated;
    return f;
  }
  static std::shared_ptr<Formula> gate(Kind k, std::shared_ptr<Formula> l,
                                       std::shared_ptr<Formula> r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
  }

  // Size is the number of leaves; constants count 0.
  int size() const {
    switch (kind) {
      case kConst: return 0;
      case kLit: return 1;
      default: return left->size() + right->size();
    }
  }

  int depth() const {
    switch (kind) {
      case kConst: return kNegInfDepth;
      case kLit: return 0;
      default: return 1 + std::max(left->depth(), right->depth());
    }
  }

  // Input indexed with x_1 as the most significant bit, matching TruthTable.
  int eval(std::uint32_t input, int arity) const {
    switch (kind) {
      case kConst: return value;
      case kLit: {
        int bit = (input >> (arity - var)) & 1;
        return negated ? 1 - bit : bit;
      }
      case kAnd: return left->eval(input, arity) & right->eval(input, arity);
      case kOr: return left->eval(input, arity) | right->eval(input, arity);
    }
    return 0;
  }

  TruthTable table(int arity) const {
    std::uint64_t bits = 0;
    for (int x = 0; x < (1 << arity); ++x)
      bits |= std::uint64_t(eval(x, arity)) << x;
    return TruthTable(arity, bits);
  }

  std::string to_string() const {
    switch (kind) {
      case kConst: return value ? "1" : "0";
      case kLit: return (negated ? "!x" : "x") + std::to_string(var);
      case kAnd: return "(" + left->to_string() + " & " + right->to_string() + ")";
      case kOr: return "(" + left->to_string() + " | " + right->to_string() + ")";
    }
    return "?";
  }
};

using FormulaPtr = std::shared_ptr<Formula>;

namespace detail {

// Builds formulas for [parity of vars, complement of parity of vars].
inline std::pair<FormulaPtr, FormulaPtr> parity_pair(const std::vector<int>& vars) {
  if (vars.size() == 1) {
    return {Formula::literal(vars[0], false), Formula::literal(vars[0], true)};
  }
  std::vector<int> lo(vars.begin(), vars.begin() + vars.size() / 2);
  std::vector<int> hi(vars.begin() + vars.size() / 2, vars.end());
  auto [p, np] = parity_pair(lo);
  auto [q, nq] = parity_pair(hi);
  auto [p2, np2] = parity_pair(lo);
  auto [q2, nq2] = parity_pair(hi);
  // parity = (p & !q) | (!p & q); complement = (p & q) | (!p & !q)
  auto even = Formula::gate(Formula::kOr, Formula::gate(Formula::kAnd, p, nq),
                            Formula::gate(Formula::kAnd, np, q));
  auto odd = Formula::gate(Formula::kOr, Formula::gate(Formula::kAnd, p2, q2),
                           Formula::gate(Formula::kAnd, np2, nq2));
  return {even, odd};
}

}  // namespace detail

// Formula computing parity of n bits, size <= 4n^2.
inline FormulaPtr build_parity_formula(int n) {
  if (n < 1) throw std::invalid_argument("build_parity_formula: n >= 1 required");
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i + 1;
  return detail::parity_pair(vars).first;
}

// Exact (L, D) of a function by exhaustive enumeration, independent of the
// communication-game solver. L comes from a DP over (size, computable
// function); D from a closure over depth levels.
struct OracleResult {
  int size = 0;        // L(f); valid only if size_known
  bool size_known = false;  // false iff the size cap was hit
  int depth = kNegInfDepth;  // D(f); always exact
};

inline OracleResult formula_oracle(const TruthTable& f, int size_cap = 12) {
  if (f.arity > 3) throw std::invalid_argument("formula_oracle: arity <= 3 required");
  if (size_cap > 16) throw std::invalid_argument("formula_oracle: size_cap too large");
  const int n = f.arity;
  const int table_bits = 1 << n;
  const std::uint64_t full = (1ull << table_bits) - 1;
  OracleResult res;

  if (f.is_constant()) {
    res.size = 0;
    res.size_known = true;
    res.depth = kNegInfDepth;
    return res;
  }

  // Seeds: literals.
  std::vector<std::uint64_t> literals;
  for (int v = 1; v <= n; ++v) {
    std::uint64_t pos = 0;
    for (int x = 0; x < table_bits; ++x)
      if ((x >> (n - v)) & 1) pos |= 1ull << x;
    literals.push_back(pos);
    literals.push_back(~pos & full);
  }

  // Size DP: computable[s] = set of functions with a formula of exactly s leaves.
  std::vector<std::vector<std::uint64_t>> by_size(size_cap + 1);
  std::vector<int> min_size(1ull << table_bits, -1);
  by_size[1] = literals;
  for (auto t : literals)
    if (min_size[t] < 0) min_size[t] = 1;
  for (int s = 2; s <= size_cap; ++s) {
    std::vector<char> seen(1ull << table_bits, 0);
    for (int s1 = 1; s1 < s; ++s1) {
      int s2 = s - s1;
      for (auto a : by_size[s1])
        for (auto b : by_size[s2]) {
          std::uint64_t ands = a & b, ors = a | b;
          for (std::uint64_t t : {ands, ors}) {
            if (!seen[t]) {
              seen[t] = 1;
              if (min_size[t] < 0) min_size[t] = s;
              by_size[s].push_back(t);
            }
          }
        }
    }
  }
  if (min_size[f.bits] >= 0) {
    res.size = min_size[f.bits];
    res.size_known = true;
  }

  // Depth closure: functions computable at depth <= d, no size restriction.
  std::vector<char> reach(1ull << table_bits, 0);
  std::vector<std::uint64_t> frontier = literals;
  for (auto t : literals) reach[t] = 1;
  int d = 0;
  std::vector<std::uint64_t> level = literals;
  while (!reach[f.bits]) {
    ++d;
    std::vector<std::uint64_t> next_level;
    std::vector<std::uint64_t> all;
    for (std::uint64_t t = 0; t <= full; ++t)
      if (reach[t]) all.push_back(t);
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i; j < all.size(); ++j) {
        for (std::uint64_t t : {all[i] & all[j], all[i] | all[j]}) {
          if (!reach[t]) {
            reach[t] = 1;
            next_level.push_back(t);
          }
        }
      }
    if (next_level.empty() && !reach[f.bits])
      throw std::logic_error("formula_oracle: depth closure stalled");
    level = std::move(next_level);
  }
  res.depth = d;
  return res;
}

}  // namespace kwlab
