#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kwlab {

// Depth of a constant function / empty rectangle. Saturating so that
// arithmetic like neg_inf + 3 stays neg_inf.
constexpr int kNegInfDepth = std::numeric_limits<int>::min() / 4;

inline bool is_neg_inf(int d) { return d <= kNegInfDepth; }

inline int depth_add(int a, int b) {
  if (is_neg_inf(a) || is_neg_inf(b)) return kNegInfDepth;
  return a + b;
}

inline std::string depth_str(int d) {
  return is_neg_inf(d) ? std::string("-inf") : std::to_string(d);
}

// Thrown when an enumeration budget is exceeded. Callers must be able to
// tell this apart from an assertion failure, so it gets its own type.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a, used for content-addressing relation descriptors and cache keys.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline int popcount64(std::uint64_t v) { return __builtin_popcountll(v); }

}  // namespace kwlab
