#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"

namespace kwlab {

// m coordinate alphabets of one common size q. Symbols are dense indices
// 0..q-1; optional per-coordinate label tables carry the actual symbols.
struct AlphabetProfile {
  int m = 0;
  int q = 0;
  std::vector<std::vector<std::string>> labels;  // empty or labels[i].size() == q

  AlphabetProfile() = default;
  AlphabetProfile(int m_, int q_) : m(m_), q(q_) {
    if (m_ < 0 || q_ < 1) throw std::invalid_argument("AlphabetProfile: m >= 0, q >= 1");
  }

  void set_labels(std::vector<std::vector<std::string>> l) {
    if ((int)l.size() != m) throw std::invalid_argument("AlphabetProfile: label table count");
    for (auto& tab : l) {
      if ((int)tab.size() != q)
        throw std::invalid_argument("AlphabetProfile: alphabets must all have size q");
      std::set<std::string> uniq(tab.begin(), tab.end());
      if ((int)uniq.size() != q)
        throw std::invalid_argument("AlphabetProfile: duplicate label in a coordinate");
    }
    labels = std::move(l);
  }

  bool operator==(const AlphabetProfile& o) const { return m == o.m && q == o.q; }
};

using Str = std::vector<int>;

// A set of m-tuples over an alphabet profile, kept sorted and deduplicated.
struct StringSet {
  AlphabetProfile profile;
  std::vector<Str> strings;

  StringSet() = default;
  StringSet(AlphabetProfile p, std::vector<Str> s) : profile(p), strings(std::move(s)) {
    for (const auto& w : strings) {
      if ((int)w.size() != profile.m) throw std::invalid_argument("StringSet: length mismatch");
      for (int c : w)
        if (c < 0 || c >= profile.q) throw std::invalid_argument("StringSet: symbol out of range");
    }
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  }

  std::size_t size() const { return strings.size(); }
  bool empty() const { return strings.empty(); }
  bool contains(const Str& w) const {
    return std::binary_search(strings.begin(), strings.end(), w);
  }
};

// Everything below works on "suffix groups": the strings with first symbol
// sigma, first symbol removed.
namespace detail {

inline std::map<int, std::vector<Str>> group_by_head(const std::vector<Str>& X) {
  std::map<int, std::vector<Str>> groups;
  for (const auto& w : X) groups[w[0]].emplace_back(w.begin() + 1, w.end());
  return groups;
}

}  // namespace detail

struct PrefixNode {
  std::map<int, PrefixNode> children;

  int degree() const { return (int)children.size(); }

  int node_count() const {
    int total = 1;
    for (const auto& [s, c] : children) total += c.node_count();
    return total;
  }

  int min_degree() const {  // over internal nodes; leaves excluded
    if (children.empty()) return std::numeric_limits<int>::max();
    int best = degree();
    for (const auto& [s, c] : children) best = std::min(best, c.min_degree());
    return best;
  }
};

inline PrefixNode prefix_tree(const StringSet& X) {
  if (X.empty()) throw std::invalid_argument("prefix_tree: empty set");
  PrefixNode root;
  for (const auto& w : X.strings) {
    PrefixNode* v = &root;
    for (int c : w) v = &v->children[c];
  }
  return root;
}

namespace detail {

// Decides whether X (as raw suffix strings) has a subset whose trie has
// minimum degree strictly above t; fills the witness when found.
inline bool thick_rec(const std::vector<Str>& X, double t, Str& prefix,
                      std::vector<Str>* out) {
  if (X.empty()) return false;
  if (X[0].empty()) {  // depth m reached
    if (out) out->push_back(prefix);
    return true;
  }
  auto groups = group_by_head(X);
  std::vector<std::pair<int, const std::vector<Str>*>> good;
  for (const auto& [sigma, sub] : groups)
    if (thick_rec(sub, t, prefix, nullptr)) good.push_back({sigma, &sub});
  if ((double)good.size() <= t) return false;
  if (out)
    for (auto [sigma, sub] : good) {
      prefix.push_back(sigma);
      thick_rec(*sub, t, prefix, out);
      prefix.pop_back();
    }
  return true;
}

}  // namespace detail

struct ThicknessResult {
  bool thick = false;
  std::optional<StringSet> witness;
};

// X is prefix thick with degree t if some subset's trie has minimum degree
// strictly greater than t. The strictness matters: at the default t = q/2 it
// is what makes two thick sets intersect.
inline ThicknessResult is_prefix_thick(const StringSet& X, double t) {
  ThicknessResult res;
  if (X.empty()) return res;
  if (X.profile.m == 0) {  // the empty-string set
    res.thick = true;
    res.witness = X;
    return res;
  }
  Str prefix;
  std::vector<Str> wit;
  res.thick = detail::thick_rec(X.strings, t, prefix, &wit);
  if (res.thick) res.witness = StringSet(X.profile, wit);
  return res;
}

inline ThicknessResult is_prefix_thick(const StringSet& X) {
  return is_prefix_thick(X, X.profile.q / 2.0);
}

// Branching structures are degree vectors w in [q]^m, stored 1-based.
namespace detail {

inline std::set<Str> winning_rec(const std::vector<Str>& X, int m) {
  std::set<Str> W;
  if (X.empty()) return W;
  if (m == 1) {
    // Base: a set of single symbols of size s wins exactly degrees 1..s.
    for (int k = 1; k <= (int)X.size(); ++k) W.insert(Str{k});
    return W;
  }
  auto groups = group_by_head(X);
  std::map<Str, int> c_w;
  for (const auto& [sigma, sub] : groups)
    for (const auto& w : winning_rec(sub, m - 1)) ++c_w[w];
  for (const auto& [w, c] : c_w)
    for (int k = 1; k <= c; ++k) {
      Str kw;
      kw.reserve(w.size() + 1);
      kw.push_back(k);
      kw.insert(kw.end(), w.begin(), w.end());
      W.insert(kw);
    }
  return W;
}

// Independent oracle: does the trie of X contain a subtree whose depth-i
// degrees all equal w_i?
inline bool has_uniform_subtree(const std::vector<Str>& X, const Str& w, std::size_t at) {
  if (at == w.size()) return !X.empty();
  auto groups = group_by_head(X);
  int good = 0;
  for (const auto& [sigma, sub] : groups)
    if (has_uniform_subtree(sub, w, at + 1)) ++good;
  return good >= w[at];
}

}  // namespace detail

inline std::set<Str> winning_set(const StringSet& X) {
  if (X.size() > 100000) throw BudgetExceeded("winning_set: too many strings");
  if (X.profile.m == 0) return X.empty() ? std::set<Str>{} : std::set<Str>{Str{}};
  return detail::winning_rec(X.strings, X.profile.m);
}

inline std::set<Str> winning_set_oracle(const StringSet& X) {
  const int q = X.profile.q, m = X.profile.m;
  if (std::pow((double)q, m) > 4096) throw BudgetExceeded("winning_set_oracle: q^m too large");
  if (m == 0) return X.empty() ? std::set<Str>{} : std::set<Str>{Str{}};
  std::set<Str> W;
  Str w(m, 1);
  for (;;) {
    if (detail::has_uniform_subtree(X.strings, w, 0)) W.insert(w);
    int i = m - 1;
    while (i >= 0 && w[i] == q) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return W;
}

struct WinningSizeReport {
  std::size_t set_size = 0, winning_size = 0;
  bool identity = false;       // |W(X)| = |X|
  bool oracle_checked = false;
  bool oracle_agrees = false;
};

inline WinningSizeReport verify_winning_size(const StringSet& X) {
  WinningSizeReport rep;
  rep.set_size = X.size();
  auto W = winning_set(X);
  rep.winning_size = W.size();
  rep.identity = (rep.set_size == rep.winning_size);
  if (std::pow((double)X.profile.q, X.profile.m) <= 4096) {
    rep.oracle_checked = true;
    rep.oracle_agrees = (W == winning_set_oracle(X));
  }
  return rep;
}

inline StringSet project(const StringSet& X, const std::vector<int>& coords) {
  AlphabetProfile p((int)coords.size(), X.profile.q);
  std::vector<Str> out;
  for (const auto& w : X.strings) {
    Str proj;
    for (int i : coords) proj.push_back(w.at(i));
    out.push_back(proj);
  }
  return StringSet(p, out);
}

struct ThickProjections {
  std::vector<std::uint32_t> family;  // subsets of [m] as bitmasks, sorted
  double density_bound = 0;           // the guaranteed lower bound on |F|/2^m
  bool bound_holds = false;
};

// F = { I : X|_I is prefix thick with degree (1/2+eps)q }, with the density
// guarantee |F|/2^m >= 2^{-2 log2(e) eps m} |X|/q^m.
inline ThickProjections thick_projections(const StringSet& X, double eps) {
  const int m = X.profile.m;
  if (m > 16) throw BudgetExceeded("thick_projections: m > 16");
  ThickProjections res;
  double t = (0.5 + eps) * X.profile.q;
  for (std::uint32_t I = 0; I < (1u << m); ++I) {
    std::vector<int> coords;
    for (int i = 0; i < m; ++i)
      if ((I >> i) & 1) coords.push_back(i);
    if (is_prefix_thick(project(X, coords), t).thick) res.family.push_back(I);
  }
  double frac = (double)res.family.size() / std::exp2(m);
  res.density_bound = std::exp2(-2.0 * std::log2(std::exp(1.0)) * eps * m) *
                      (double)X.size() / std::pow((double)X.profile.q, m);
  res.bound_holds = frac + 1e-9 >= res.density_bound;
  return res;
}

// Greedy common-child descent through thick witnesses of both sets. Returns
// a common string whenever both sets are prefix thick at degree q/2.
inline std::optional<Str> intersect_witness(const StringSet& X, const StringSet& Y) {
  if (!(X.profile == Y.profile)) throw std::invalid_argument("intersect_witness: profile mismatch");
  double t = X.profile.q / 2.0;
  auto tx = is_prefix_thick(X, t), ty = is_prefix_thick(Y, t);
  if (!tx.thick || !ty.thick) return std::nullopt;
  std::vector<Str> xs = tx.witness->strings, ys = ty.witness->strings;
  Str common;
  for (int depth = 0; depth < X.profile.m; ++depth) {
    auto gx = detail::group_by_head(xs), gy = detail::group_by_head(ys);
    int pick = -1;
    for (const auto& [sigma, sub] : gx)
      if (gy.count(sigma)) {
        pick = sigma;
        break;
      }
    if (pick < 0) return std::nullopt;  // impossible when both witnesses are thick
    common.push_back(pick);
    xs = gx[pick];
    ys = gy[pick];
  }
  return common;
}

}  // namespace kwlab
