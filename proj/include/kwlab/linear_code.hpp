#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/entropy.hpp"

namespace kwlab {

// Binary linear code given by a basis of m-bit vectors over GF(2).
struct LinearCode {
  int length = 0;
  std::vector<std::uint32_t> basis;

  int dimension() const { return (int)basis.size(); }

  std::vector<std::uint32_t> codewords() const {
    std::vector<std::uint32_t> words{0};
    for (auto b : basis) {
      size_t sz = words.size();
      for (size_t i = 0; i < sz; ++i) words.push_back(words[i] ^ b);
    }
    return words;
  }

  bool contains(std::uint32_t v) const {
    // Reduce against a row-echelon copy of the basis.
    std::vector<std::uint32_t> ech = echelon();
    for (auto b : ech) {
      std::uint32_t lead = 1u << (31 - __builtin_clz(b));
      if (v & lead) v ^= b;
    }
    return v == 0;
  }

  std::vector<std::uint32_t> echelon() const {
    std::vector<std::uint32_t> rows = basis;
    std::vector<std::uint32_t> out;
    for (int bit = length - 1; bit >= 0; --bit) {
      std::uint32_t mask = 1u << bit;
      auto it = std::find_if(rows.begin(), rows.end(), [&](std::uint32_t r) { return r & mask; });
      if (it == rows.end()) continue;
      std::uint32_t pivot = *it;
      rows.erase(it);
      for (auto& r : rows)
        if (r & mask) r ^= pivot;
      out.push_back(pivot);
    }
    return out;
  }

  int rank() const { return (int)echelon().size(); }

  // Minimum Hamming weight over all nonzero codewords, by full enumeration.
  int min_distance() const {
    int best = length + 1;
    for (auto w : codewords())
      if (w != 0) best = std::min(best, popcount64(w));
    return best == length + 1 ? 0 : best;
  }
};

namespace detail {

inline bool extension_keeps_distance(const std::vector<std::uint32_t>& words,
                                     std::uint32_t v, int d) {
  for (auto w : words)
    if (popcount64(w ^ v) < d) return false;
  return true;
}

// Depth-first search for a large basis, lexicographic candidate order, with a
// node budget so the exhaustive mode stays bounded.
inline void code_search(int m, int d, std::uint32_t start,
                        std::vector<std::uint32_t>& basis,
                        std::vector<std::uint32_t>& words,
                        std::vector<std::uint32_t>& best, long& budget) {
  if ((int)basis.size() > (int)best.size()) best = basis;
  if ((int)basis.size() >= m - d + 1) return;  // Singleton bound
  for (std::uint32_t v = start; v < (1u << m); ++v) {
    if (budget-- <= 0) return;
    if (popcount64(v) < d) continue;
    if (!extension_keeps_distance(words, v, d)) continue;
    size_t sz = words.size();
    basis.push_back(v);
    for (size_t i = 0; i < sz; ++i) words.push_back(words[i] ^ v);
    code_search(m, d, v + 1, basis, words, best, budget);
    words.resize(sz);
    basis.pop_back();
  }
}

}  // namespace detail

// Greedy lexicographic basis extension; for m <= 14 a backtracking search
// tries to beat the greedy dimension. Always succeeds (repetition code).
inline LinearCode find_linear_code(int m, int d) {
  if (m < 1 || d < 1 || d > m) throw std::invalid_argument("find_linear_code: need 1 <= d <= m");
  LinearCode code;
  code.length = m;
  std::vector<std::uint32_t> words{0};
  for (std::uint32_t v = 1; v < (1u << m); ++v) {
    if (detail::extension_keeps_distance(words, v, d)) {
      size_t sz = words.size();
      code.basis.push_back(v);
      for (size_t i = 0; i < sz; ++i) words.push_back(words[i] ^ v);
    }
  }
  if (m <= 14) {
    std::vector<std::uint32_t> basis, best = code.basis, w{0};
    long budget = 2'000'000;
    detail::code_search(m, d, 1, basis, w, best, budget);
    if (best.size() > code.basis.size()) code.basis = best;
  }
  if (code.basis.empty()) throw std::logic_error("find_linear_code: no code found");
  if (code.min_distance() < d) throw std::logic_error("find_linear_code: distance check failed");
  return code;
}

// Varshamov-style rate (1 - H2(d/m)) * m, reported as information only
// (the theorem itself is asymptotic).
inline double varshamov_rate_bits(int m, int d) {
  return (1.0 - binary_entropy((double)d / m)) * m;
}

// Coset representatives (lexicographically smallest member of each coset).
// Checks that the cosets partition {0,1}^m.
inline std::vector<std::uint32_t> cosets(const LinearCode& C) {
  if (C.length > 20) throw BudgetExceeded("cosets: code length > 20");
  auto words = C.codewords();
  std::vector<char> seen(1u << C.length, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t v = 0; v < (1u << C.length); ++v) {
    if (seen[v]) continue;
    reps.push_back(v);
    for (auto w : words) {
      if (seen[v ^ w]) throw std::logic_error("cosets: not a partition");
      seen[v ^ w] = 1;
    }
  }
  for (std::uint32_t v = 0; v < (1u << C.length); ++v)
    if (!seen[v]) throw std::logic_error("cosets: element missed");
  return reps;
}

}  // namespace kwlab
