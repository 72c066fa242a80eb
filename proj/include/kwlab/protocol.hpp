#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/relation.hpp"

namespace kwlab {

// Node of a deterministic protocol tree. Rectangles are stored as bitmasks
// over the relation's indexed domains (bit i = element i present).
struct ProtoNode {
  bool is_leaf = false;
  int owner = 0;               // 0 = Alice speaks (splits X), 1 = Bob
  std::uint32_t xmask = 0, ymask = 0;
  std::size_t output = kNoOutput;  // leaf only
  std::shared_ptr<ProtoNode> child[2];
};

using ProtoNodePtr = std::shared_ptr<ProtoNode>;

struct ProtocolTree {
  ProtoNodePtr root;

  int depth() const { return node_depth(root.get()); }

  int leaf_count() const { return count_leaves(root.get()); }

 private:
  static int node_depth(const ProtoNode* v) {
    if (!v || v->is_leaf) return 0;
    return 1 + std::max(node_depth(v->child[0].get()), node_depth(v->child[1].get()));
  }
  static int count_leaves(const ProtoNode* v) {
    if (!v) return 0;
    if (v->is_leaf) return 1;
    return count_leaves(v->child[0].get()) + count_leaves(v->child[1].get());
  }
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  std::string summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& p : problems) os << p << "\n";
    return os.str();
  }
};

namespace detail {

inline void validate_node(const ProtoNode* v, const Relation& R, const std::string& path,
                          ValidationReport& rep) {
  if (!v) {
    rep.problems.push_back(path + ": missing node");
    return;
  }
  if (v->is_leaf) {
    for (std::size_t xi = 0; xi < R.x_size; ++xi) {
      if (!((v->xmask >> xi) & 1)) continue;
      for (std::size_t yi = 0; yi < R.y_size; ++yi) {
        if (!((v->ymask >> yi) & 1)) continue;
        if (v->output == kNoOutput || !R.solves(xi, yi, v->output)) {
          rep.problems.push_back(path + ": leaf output invalid at (" + std::to_string(xi) +
                                 "," + std::to_string(yi) + ")");
          return;
        }
      }
    }
    return;
  }
  for (int b = 0; b < 2; ++b)
    if (!v->child[b]) {
      rep.problems.push_back(path + ": inner node missing child");
      return;
    }
  const ProtoNode* c0 = v->child[0].get();
  const ProtoNode* c1 = v->child[1].get();
  if (v->owner == 0) {
    if ((c0->xmask & c1->xmask) || (c0->xmask | c1->xmask) != v->xmask)
      rep.problems.push_back(path + ": X children do not partition X");
    if (c0->ymask != v->ymask || c1->ymask != v->ymask)
      rep.problems.push_back(path + ": Y must be unchanged when Alice speaks");
  } else {
    if ((c0->ymask & c1->ymask) || (c0->ymask | c1->ymask) != v->ymask)
      rep.problems.push_back(path + ": Y children do not partition Y");
    if (c0->xmask != v->xmask || c1->xmask != v->xmask)
      rep.problems.push_back(path + ": X must be unchanged when Bob speaks");
  }
  validate_node(c0, R, path + "0", rep);
  validate_node(c1, R, path + "1", rep);
}

}  // namespace detail

// Checks the protocol-tree invariants against a relation: the root covers the
// full rectangle, each bit partitions the speaking side and fixes the other,
// and each leaf's output solves the relation on its whole rectangle.
inline ValidationReport validate_protocol(const ProtocolTree& P, const Relation& R) {
  ValidationReport rep;
  if (!P.root) {
    rep.problems.push_back("empty protocol");
    return rep;
  }
  std::uint32_t fullx = (R.x_size >= 32) ? ~0u : ((1u << R.x_size) - 1);
  std::uint32_t fully = (R.y_size >= 32) ? ~0u : ((1u << R.y_size) - 1);
  if (R.x_size > 32 || R.y_size > 32) {
    rep.problems.push_back("domain too large for mask representation");
    return rep;
  }
  if (P.root->xmask != fullx || P.root->ymask != fully)
    rep.problems.push_back("root does not cover the full rectangle");
  detail::validate_node(P.root.get(), R, "", rep);
  return rep;
}

namespace detail {

inline ProtoNodePtr leaf_node(std::uint32_t xm, std::uint32_t ym, std::size_t out) {
  auto v = std::make_shared<ProtoNode>();
  v->is_leaf = true;
  v->xmask = xm;
  v->ymask = ym;
  v->output = out;
  return v;
}

// Restrict a mask to indices whose element passes `keep`.
template <typename Keep>
std::uint32_t filter_mask(std::uint32_t mask, std::size_t n, Keep keep) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (((mask >> i) & 1) && keep(i)) out |= 1u << i;
  return out;
}

}  // namespace detail

// The textbook two-phase protocol for a composition relation: run a protocol
// for KW_f on the column vectors a = g(X), b = g(Y) to find i with a_i != b_i,
// then run a protocol for KW_g on row i (with roles swapped when a_i = 0) to
// find j with X_{i,j} != Y_{i,j}. Works for both the standard and strong
// variants; depth is depth(Pf) + depth(Pg).
inline ProtocolTree obvious_protocol(const Relation& comp, const TruthTable& g,
                                     const ProtocolTree& Pf, const ProtocolTree& Pg) {
  if (comp.kind != "compose-std" && comp.kind != "compose-strong")
    throw std::invalid_argument("obvious_protocol: composition relation required");
  const int m = comp.m, n = comp.n;
  const TruthTable& f = comp.f;

  // Index maps for the inner relation KW_g.
  std::map<std::uint32_t, std::size_t> gx_index, gy_index;
  {
    auto ones = g.preimage(1);
    auto zeros = g.preimage(0);
    for (std::size_t i = 0; i < ones.size(); ++i) gx_index[ones[i]] = i;
    for (std::size_t i = 0; i < zeros.size(); ++i) gy_index[zeros[i]] = i;
  }
  std::map<std::uint32_t, std::size_t> fx_index, fy_index;
  {
    auto ones = f.preimage(1);
    auto zeros = f.preimage(0);
    for (std::size_t i = 0; i < ones.size(); ++i) fx_index[ones[i]] = i;
    for (std::size_t i = 0; i < zeros.size(); ++i) fy_index[zeros[i]] = i;
  }

  auto col_a = [&](std::size_t xi) {
    return apply_rowwise(g, BooleanMatrix::from_key(m, n, comp.x_matrices[xi])).bits;
  };
  auto col_b = [&](std::size_t yi) {
    return apply_rowwise(g, BooleanMatrix::from_key(m, n, comp.y_matrices[yi])).bits;
  };
  auto row_x = [&](std::size_t xi, int i) {
    return BooleanMatrix::from_key(m, n, comp.x_matrices[xi]).row(i);
  };
  auto row_y = [&](std::size_t yi, int i) {
    return BooleanMatrix::from_key(m, n, comp.y_matrices[yi]).row(i);
  };

  // Phase 2: simulate Pg on row i. If sigma = 1 then Alice's row is a
  // g-one-input and the roles match Pg; otherwise they are swapped.
  std::function<ProtoNodePtr(const ProtoNode*, int, int, std::uint32_t, std::uint32_t)> phase2 =
      [&](const ProtoNode* gv, int i, int sigma, std::uint32_t xm, std::uint32_t ym)
      -> ProtoNodePtr {
    auto v = std::make_shared<ProtoNode>();
    v->xmask = xm;
    v->ymask = ym;
    if (gv->is_leaf) {
      v->is_leaf = true;
      v->output = (std::size_t)i * n + gv->output;
      return v;
    }
    // Membership of a composition input in a Pg-node's side set.
    auto x_in = [&](std::size_t xi, const ProtoNode* node) {
      std::uint32_t r = row_x(xi, i);
      return sigma == 1 ? ((node->xmask >> gx_index.at(r)) & 1) != 0
                        : ((node->ymask >> gy_index.at(r)) & 1) != 0;
    };
    auto y_in = [&](std::size_t yi, const ProtoNode* node) {
      std::uint32_t r = row_y(yi, i);
      return sigma == 1 ? ((node->ymask >> gy_index.at(r)) & 1) != 0
                        : ((node->xmask >> gx_index.at(r)) & 1) != 0;
    };
    bool alice_speaks = (sigma == 1) ? (gv->owner == 0) : (gv->owner == 1);
    v->owner = alice_speaks ? 0 : 1;
    for (int b = 0; b < 2; ++b) {
      const ProtoNode* gc = gv->child[b].get();
      std::uint32_t cx = xm, cy = ym;
      if (alice_speaks)
        cx = detail::filter_mask(xm, comp.x_size, [&](std::size_t xi) { return x_in(xi, gc); });
      else
        cy = detail::filter_mask(ym, comp.y_size, [&](std::size_t yi) { return y_in(yi, gc); });
      v->child[b] = phase2(gc, i, sigma, cx, cy);
    }
    return v;
  };

  // Phase 1: simulate Pf on the column vectors.
  std::function<ProtoNodePtr(const ProtoNode*, std::uint32_t, std::uint32_t)> phase1 =
      [&](const ProtoNode* fv, std::uint32_t xm, std::uint32_t ym) -> ProtoNodePtr {
    if (fv->is_leaf) {
      int i = (int)fv->output;
      // An empty side makes the leaf vacuously correct; skip phase 2.
      if (xm == 0 || ym == 0) return detail::leaf_node(xm, ym, (std::size_t)i * n);
      // With both sides nonempty, a_i is constant on Alice's side of the
      // leaf rectangle and equals 1 - b_i.
      int sigma = 1;
      for (std::size_t xi = 0; xi < comp.x_size; ++xi)
        if ((xm >> xi) & 1) {
          sigma = (col_a(xi) >> (m - 1 - i)) & 1;
          break;
        }
      return phase2(Pg.root.get(), i, sigma, xm, ym);
    }
    auto v = std::make_shared<ProtoNode>();
    v->xmask = xm;
    v->ymask = ym;
    v->owner = fv->owner;
    for (int b = 0; b < 2; ++b) {
      const ProtoNode* fc = fv->child[b].get();
      std::uint32_t cx = xm, cy = ym;
      if (fv->owner == 0)
        cx = detail::filter_mask(xm, comp.x_size, [&](std::size_t xi) {
          return ((fc->xmask >> fx_index.at(col_a(xi))) & 1) != 0;
        });
      else
        cy = detail::filter_mask(ym, comp.y_size, [&](std::size_t yi) {
          return ((fc->ymask >> fy_index.at(col_b(yi))) & 1) != 0;
        });
      v->child[b] = phase1(fc, cx, cy);
    }
    return v;
  };

  std::uint32_t fullx = (comp.x_size >= 32) ? ~0u : ((1u << comp.x_size) - 1);
  std::uint32_t fully = (comp.y_size >= 32) ? ~0u : ((1u << comp.y_size) - 1);
  ProtocolTree out;
  out.root = phase1(Pf.root.get(), fullx, fully);
  return out;
}

}  // namespace kwlab
