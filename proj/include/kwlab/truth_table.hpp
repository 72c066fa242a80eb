#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"

namespace kwlab {

// A Boolean function on `arity` bits, stored as a 2^arity bit vector.
// Input (x_1,...,x_n) is indexed by the integer whose most significant bit
// is x_1, so index 0 is the all-zero input.
struct TruthTable {
  int arity = 0;
  std::uint64_t bits = 0;

  TruthTable() = default;
  TruthTable(int n, std::uint64_t b) : arity(n), bits(b) {
    if (n < 1 || n > 6) throw std::invalid_argument("TruthTable: arity out of range");
    if (n < 6) bits &= (1ull << (1ull << n)) - 1;
  }

  int domain_size() const { return 1 << arity; }

  int eval(std::uint32_t input) const { return (bits >> input) & 1; }

  bool is_constant() const {
    std::uint64_t full = (arity == 6) ? ~0ull : ((1ull << (1ull << arity)) - 1);
    return bits == 0 || bits == full;
  }

  int ones_count() const { return popcount64(bits); }

  bool is_balanced() const { return ones_count() == domain_size() / 2; }

  // Inputs mapped to the given value.
  std::vector<std::uint32_t> preimage(int value) const {
    std::vector<std::uint32_t> out;
    for (int x = 0; x < domain_size(); ++x)
      if (eval(x) == value) out.push_back(x);
    return out;
  }

  bool operator==(const TruthTable& o) const { return arity == o.arity && bits == o.bits; }
  bool operator<(const TruthTable& o) const {
    return arity != o.arity ? arity < o.arity : bits < o.bits;
  }

  // Hex of the 2^n-bit vector, most significant input first.
  std::string to_hex() const {
    int nibbles = (domain_size() + 3) / 4;
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (int i = nibbles - 1; i >= 0; --i) s.push_back(digits[(bits >> (4 * i)) & 0xf]);
    return s;
  }

  static TruthTable from_hex(int arity, const std::string& hex) {
    std::uint64_t b = 0;
    for (char c : hex) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw std::invalid_argument("TruthTable::from_hex: bad digit");
      b = (b << 4) | d;
    }
    if (arity < 6 && b >= (1ull << (1ull << arity)))
      throw std::invalid_argument("TruthTable::from_hex: value too wide for arity");
    return TruthTable(arity, b);
  }
};

// Common small functions.
inline TruthTable tt_and2() { return TruthTable(2, 0b1000); }
inline TruthTable tt_or2() { return TruthTable(2, 0b1110); }
inline TruthTable tt_xor2() { return TruthTable(2, 0b0110); }
inline TruthTable tt_const(int arity, int value) {
  std::uint64_t full = (arity == 6) ? ~0ull : ((1ull << (1ull << arity)) - 1);
  return TruthTable(arity, value ? full : 0);
}

inline std::vector<TruthTable> all_functions(int arity) {
  std::vector<TruthTable> out;
  out.reserve(1ull << (1 << arity));
  for (std::uint64_t b = 0; b < (1ull << (1 << arity)); ++b) out.emplace_back(arity, b);
  return out;
}

inline std::vector<TruthTable> balanced_functions(int arity) {
  std::vector<TruthTable> out;
  for (const auto& f : all_functions(arity))
    if (f.is_balanced()) out.push_back(f);
  return out;
}

// An m x n Boolean matrix. Row i is an n-bit string, itself indexed like a
// TruthTable input (first column is the most significant bit).
struct BooleanMatrix {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> row_bits;

  BooleanMatrix() = default;
  BooleanMatrix(int m, int n) : rows(m), cols(n), row_bits(m, 0) {}
  BooleanMatrix(int m, int n, std::vector<std::uint32_t> r)
      : rows(m), cols(n), row_bits(std::move(r)) {
    if ((int)row_bits.size() != m) throw std::invalid_argument("BooleanMatrix: row count mismatch");
  }

  std::uint32_t row(int i) const { return row_bits[i]; }

  int entry(int i, int j) const {  // i, j are 0-based; column 0 is x_1
    return (row_bits[i] >> (cols - 1 - j)) & 1;
  }

  void set_entry(int i, int j, int v) {
    std::uint32_t mask = 1u << (cols - 1 - j);
    if (v) row_bits[i] |= mask; else row_bits[i] &= ~mask;
  }

  // Dense key: rows concatenated, row 0 most significant.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < rows; ++i) k = (k << cols) | row_bits[i];
    return k;
  }

  static BooleanMatrix from_key(int m, int n, std::uint64_t key) {
    BooleanMatrix X(m, n);
    for (int i = m - 1; i >= 0; --i) {
      X.row_bits[i] = key & ((1u << n) - 1);
      key >>= n;
    }
    return X;
  }

  // Row-major bit string, e.g. "10|01" without the separator.
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) s.push_back('0' + entry(i, j));
    return s;
  }

  bool operator==(const BooleanMatrix& o) const {
    return rows == o.rows && cols == o.cols && row_bits == o.row_bits;
  }
};

// Column vector a = g(X).
struct ColumnVector {
  int length = 0;
  std::uint32_t bits = 0;  // entry 0 is the most significant bit

  int entry(int i) const { return (bits >> (length - 1 - i)) & 1; }
};

inline ColumnVector apply_rowwise(const TruthTable& g, const BooleanMatrix& X) {
  if (g.arity != X.cols) throw std::invalid_argument("apply_rowwise: arity mismatch");
  ColumnVector a;
  a.length = X.rows;
  for (int i = 0; i < X.rows; ++i) a.bits = (a.bits << 1) | g.eval(X.row(i));
  a.bits <<= 0;
  return a;
}

inline int eval_composition(const TruthTable& f, const TruthTable& g, const BooleanMatrix& X) {
  if (f.arity != X.rows) throw std::invalid_argument("eval_composition: outer arity mismatch");
  if (g.arity != X.cols) throw std::invalid_argument("eval_composition: inner arity mismatch");
  return f.eval(apply_rowwise(g, X).bits);
}

}  // namespace kwlab
