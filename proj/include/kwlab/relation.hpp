#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/truth_table.hpp"

namespace kwlab {

constexpr std::size_t kNoOutput = static_cast<std::size_t>(-1);

// One side of a multiplexor-style input: a function plus a payload, which is
// either an n-bit string (MUX_n) or an m x n matrix key (MUX compositions).
struct MuxInput {
  TruthTable g;
  std::uint64_t payload = 0;
};

// A finite communication problem: indexed domains, a finite output set, and
// a solution predicate over (x index, y index, output index).
struct Relation {
  std::string kind;
  std::string descriptor;
  std::size_t x_size = 0, y_size = 0, out_size = 0;
  std::function<bool(std::size_t, std::size_t, std::size_t)> solves;

  // Kind-specific payloads (only the relevant one is populated).
  int n_bits = 0;                               // kw-rect: string length
  int m = 0, n = 0;                             // compositions / mux
  TruthTable f;                                 // outer function
  std::vector<std::uint32_t> x_strings, y_strings;   // kw-rect
  std::vector<std::uint64_t> x_matrices, y_matrices; // compose-*
  std::vector<MuxInput> x_mux, y_mux;                // mux*
  std::size_t bottom_output = kNoOutput;        // index of the symbol "bot"
  std::vector<std::string> output_labels;

  std::uint64_t content_hash() const { return fnv1a(descriptor); }

  std::size_t valid_outputs(std::size_t xi, std::size_t yi,
                            std::vector<std::size_t>* outs = nullptr) const {
    std::size_t count = 0;
    for (std::size_t o = 0; o < out_size; ++o)
      if (solves(xi, yi, o)) {
        ++count;
        if (outs) outs->push_back(o);
      }
    return count;
  }

  // Every pair must admit at least one valid output.
  void check_totality() const {
    for (std::size_t xi = 0; xi < x_size; ++xi)
      for (std::size_t yi = 0; yi < y_size; ++yi)
        if (valid_outputs(xi, yi) == 0)
          throw std::logic_error("relation " + kind + ": totality violated at (" +
                                 std::to_string(xi) + "," + std::to_string(yi) + ")");
  }
};

namespace detail {

inline std::string strings_descr(const std::vector<std::uint32_t>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace detail

// KW relation on an explicit rectangle A x B: find i with x_i != y_i.
// Output o (0-based) means coordinate o+1.
inline Relation kw_rectangle(std::vector<std::uint32_t> A, std::vector<std::uint32_t> B,
                             int n_bits) {
  if (A.empty() || B.empty()) throw std::invalid_argument("kw_rectangle: empty side");
  for (auto a : A)
    for (auto b : B)
      if (a == b) throw std::invalid_argument("kw_rectangle: sides overlap");
  Relation R;
  R.kind = "kw-rect";
  R.n_bits = n_bits;
  R.x_strings = std::move(A);
  R.y_strings = std::move(B);
  R.x_size = R.x_strings.size();
  R.y_size = R.y_strings.size();
  R.out_size = n_bits;
  for (int i = 0; i < n_bits; ++i) R.output_labels.push_back("i=" + std::to_string(i + 1));
  auto xs = R.x_strings;
  auto ys = R.y_strings;
  R.solves = [xs, ys, n_bits](std::size_t xi, std::size_t yi, std::size_t o) {
    std::uint32_t diff = xs[xi] ^ ys[yi];
    return ((diff >> (n_bits - 1 - o)) & 1) != 0;
  };
  R.descriptor = "kw-rect:n=" + std::to_string(n_bits) + ";A=" +
                 detail::strings_descr(R.x_strings) + ";B=" + detail::strings_descr(R.y_strings);
  return R;
}

// KW_f = KW over f^{-1}(1) x f^{-1}(0).
inline Relation kw_of_function(const TruthTable& f) {
  if (f.is_constant()) throw std::invalid_argument("kw_of_function: constant function");
  Relation R = kw_rectangle(f.preimage(1), f.preimage(0), f.arity);
  R.kind = "kw";
  R.f = f;
  R.descriptor = "kw:f=" + f.to_hex() + ";n=" + std::to_string(f.arity);
  return R;
}

// Composition relation on matrices: Alice holds X with (f.g)(X)=1, Bob holds
// Y with (f.g)(Y)=0; they want (i,j) with X_{i,j} != Y_{i,j}, and in the
// strong variant additionally g(X)_i != g(Y)_i. Output o = i*n + j, 0-based.
inline Relation compose(const TruthTable& f, const TruthTable& g, bool strong) {
  if (f.is_constant() || g.is_constant())
    throw std::invalid_argument("compose: constant function");
  const int m = f.arity, n = g.arity;
  if (m * n > 24) throw BudgetExceeded("compose: matrix space too large");
  Relation R;
  R.kind = strong ? "compose-strong" : "compose-std";
  R.f = f;
  R.m = m;
  R.n = n;
  for (std::uint64_t key = 0; key < (1ull << (m * n)); ++key) {
    BooleanMatrix X = BooleanMatrix::from_key(m, n, key);
    if (eval_composition(f, g, X)) R.x_matrices.push_back(key);
    else R.y_matrices.push_back(key);
  }
  R.x_size = R.x_matrices.size();
  R.y_size = R.y_matrices.size();
  R.out_size = m * n;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      R.output_labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  auto xm = R.x_matrices;
  auto ym = R.y_matrices;
  R.solves = [xm, ym, g, m, n, strong](std::size_t xi, std::size_t yi, std::size_t o) {
    BooleanMatrix X = BooleanMatrix::from_key(m, n, xm[xi]);
    BooleanMatrix Y = BooleanMatrix::from_key(m, n, ym[yi]);
    int i = (int)o / n, j = (int)o % n;
    if (X.entry(i, j) == Y.entry(i, j)) return false;
    if (strong && g.eval(X.row(i)) == g.eval(Y.row(i))) return false;
    return true;
  };
  R.descriptor = std::string(strong ? "compose-strong" : "compose-std") + ":f=" + f.to_hex() +
                 ";g=" + g.to_hex();
  if (R.x_size && R.y_size) R.check_totality();
  return R;
}

inline Relation compose_standard(const TruthTable& f, const TruthTable& g) {
  return compose(f, g, false);
}
inline Relation compose_strong(const TruthTable& f, const TruthTable& g) {
  return compose(f, g, true);
}

// Same-function multiplexor MUX_n: inputs (g_A, x in g_A^{-1}(1)) and
// (g_B, y in g_B^{-1}(0)); outputs are coordinates plus "bot", where "bot"
// is valid iff g_A != g_B. "bot" is the last output index.
inline Relation mux(int n) {
  if (n > 3) throw BudgetExceeded("mux: n > 3");
  Relation R;
  R.kind = "mux";
  R.n = n;
  for (const auto& g : all_functions(n)) {
    for (auto x : g.preimage(1)) R.x_mux.push_back({g, x});
    for (auto y : g.preimage(0)) R.y_mux.push_back({g, y});
  }
  R.x_size = R.x_mux.size();
  R.y_size = R.y_mux.size();
  R.out_size = n + 1;
  for (int i = 0; i < n; ++i) R.output_labels.push_back("i=" + std::to_string(i + 1));
  R.output_labels.push_back("bot");
  R.bottom_output = n;
  auto xs = R.x_mux;
  auto ys = R.y_mux;
  R.solves = [xs, ys, n](std::size_t xi, std::size_t yi, std::size_t o) {
    const MuxInput& a = xs[xi];
    const MuxInput& b = ys[yi];
    if (o == (std::size_t)n) return !(a.g == b.g);
    std::uint32_t diff = (std::uint32_t)(a.payload ^ b.payload);
    return ((diff >> (n - 1 - o)) & 1) != 0;
  };
  R.descriptor = "mux:n=" + std::to_string(n);
  R.check_totality();
  return R;
}

// Multiplexor composition KW_f <>/(*) MUX_n: Alice holds (g_A, X) with
// (f.g_A)(X)=1, Bob holds (g_B, Y) with (f.g_B)(Y)=0. Outputs are matrix
// entries (i,j) plus "bot" (valid iff g_A != g_B); in the strong variant a
// coordinate answer additionally needs g_A(X)_i != g_B(Y)_i.
inline Relation mux_compose(const TruthTable& f, int n, bool strong, int max_mn = 6) {
  if (f.is_constant()) throw std::invalid_argument("mux_compose: constant f");
  const int m = f.arity;
  if (n > 2 || m * n > max_mn)
    throw BudgetExceeded("mux_compose: domain budget exceeded (default m <= 3, n <= 2)");
  Relation R;
  R.kind = strong ? "mux-compose-strong" : "mux-compose-std";
  R.f = f;
  R.m = m;
  R.n = n;
  for (const auto& g : all_functions(n)) {
    for (std::uint64_t key = 0; key < (1ull << (m * n)); ++key) {
      BooleanMatrix X = BooleanMatrix::from_key(m, n, key);
      if (eval_composition(f, g, X)) R.x_mux.push_back({g, key});
      else R.y_mux.push_back({g, key});
    }
  }
  R.x_size = R.x_mux.size();
  R.y_size = R.y_mux.size();
  R.out_size = m * n + 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      R.output_labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  R.output_labels.push_back("bot");
  R.bottom_output = m * n;
  auto xs = R.x_mux;
  auto ys = R.y_mux;
  R.solves = [xs, ys, m, n, strong](std::size_t xi, std::size_t yi, std::size_t o) {
    const MuxInput& A = xs[xi];
    const MuxInput& B = ys[yi];
    if (o == (std::size_t)(m * n)) return !(A.g == B.g);
    BooleanMatrix X = BooleanMatrix::from_key(m, n, A.payload);
    BooleanMatrix Y = BooleanMatrix::from_key(m, n, B.payload);
    int i = (int)o / n, j = (int)o % n;
    if (X.entry(i, j) == Y.entry(i, j)) return false;
    if (strong && A.g.eval(X.row(i)) == B.g.eval(Y.row(i))) return false;
    return true;
  };
  R.descriptor = R.kind + ":f=" + f.to_hex() + ";n=" + std::to_string(n);
  if (R.x_size * R.y_size <= 1'000'000) R.check_totality();
  return R;
}

}  // namespace kwlab
