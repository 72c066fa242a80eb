#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwlab/common.hpp"
#include "kwlab/protocol.hpp"
#include "kwlab/relation.hpp"

namespace kwlab {

// Small dynamic bitset for half-duplex input sets (domains can exceed 32).
struct DynBitset {
  std::vector<std::uint64_t> w;

  DynBitset() = default;
  explicit DynBitset(std::size_t n) : w((n + 63) / 64, 0) {}

  bool get(std::size_t i) const {
    return i / 64 < w.size() && ((w[i / 64] >> (i % 64)) & 1);
  }
  void set(std::size_t i) { w[i / 64] |= 1ull << (i % 64); }

  bool empty() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += popcount64(x);
    return c;
  }
  bool operator==(const DynBitset& o) const { return w == o.w; }

  static bool disjoint(const DynBitset& a, const DynBitset& b) {
    for (std::size_t i = 0; i < a.w.size() && i < b.w.size(); ++i)
      if (a.w[i] & b.w[i]) return false;
    return true;
  }
  static DynBitset unite(const DynBitset& a, const DynBitset& b) {
    DynBitset r;
    r.w.resize(std::max(a.w.size(), b.w.size()), 0);
    for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] |= a.w[i];
    for (std::size_t i = 0; i < b.w.size(); ++i) r.w[i] |= b.w[i];
    return r;
  }
};

// Edge indices in the 4-ary trees.
enum HDEdge { kRc0 = 0, kRc1 = 1, kSd0 = 2, kSd1 = 3 };

// A node of one player's tree. A null child stands for a full subtree all of
// whose input sets are empty; executions never enter such subtrees, because
// a player's current node always contains its input.
struct HDNode {
  DynBitset inputs;
  std::size_t output = kNoOutput;  // leaves only
  std::array<std::shared_ptr<HDNode>, 4> child{};
};

using HDNodePtr = std::shared_ptr<HDNode>;

struct HDProtocol {
  int depth = 0;
  std::size_t x_size = 0, y_size = 0;
  HDNodePtr alice, bob;
};

// What a player at node v does with input i: send 0/1 or receive.
enum HDAction { kSend0, kSend1, kReceive, kLost };

inline HDAction hd_action(const HDNode* v, std::size_t idx) {
  if (v->child[kSd0] && v->child[kSd0]->inputs.get(idx)) return kSend0;
  if (v->child[kSd1] && v->child[kSd1]->inputs.get(idx)) return kSend1;
  if (v->child[kRc0] && v->child[kRc0]->inputs.get(idx)) return kReceive;
  return kLost;
}

struct HDRound {
  enum Class { kClassical, kWasted, kSilent } cls;
  int a_edge, b_edge;  // HDEdge taken by each player
};

struct ExecutionTrace {
  std::vector<HDRound> rounds;
  std::size_t output_a = kNoOutput, output_b = kNoOutput;

  bool all_classical() const {
    for (const auto& r : rounds)
      if (r.cls != HDRound::kClassical) return false;
    return true;
  }
};

namespace detail {

inline void hd_validate_tree(const HDNode* v, int depth_left, const std::string& who,
                             const std::string& path, ValidationReport& rep) {
  if (!v) return;  // empty full subtree
  if (depth_left == 0) {
    for (int e = 0; e < 4; ++e)
      if (v->child[e]) rep.problems.push_back(who + path + ": leaf has children");
    if (!v->inputs.empty() && v->output == kNoOutput)
      rep.problems.push_back(who + path + ": nonempty leaf without output");
    return;
  }
  DynBitset empty;
  auto set_of = [&](int e) -> const DynBitset& {
    return v->child[e] ? v->child[e]->inputs : empty;
  };
  if (!(set_of(kRc0) == set_of(kRc1)))
    rep.problems.push_back(who + path + ": rc(0) and rc(1) sets differ");
  DynBitset u = DynBitset::unite(DynBitset::unite(set_of(kRc0), set_of(kSd0)), set_of(kSd1));
  if (!(u == v->inputs))
    rep.problems.push_back(who + path + ": child sets do not union to the node set");
  if (!DynBitset::disjoint(set_of(kRc0), set_of(kSd0)) ||
      !DynBitset::disjoint(set_of(kRc0), set_of(kSd1)) ||
      !DynBitset::disjoint(set_of(kSd0), set_of(kSd1)))
    rep.problems.push_back(who + path + ": rc/sd(0)/sd(1) sets overlap");
  static const char* names[4] = {"r0", "r1", "s0", "s1"};
  for (int e = 0; e < 4; ++e)
    hd_validate_tree(v->child[e].get(), depth_left - 1, who, path + "." + names[e], rep);
}

inline void hd_execute(const HDNode* u, const HDNode* v, std::size_t xi, std::size_t yi,
                       int depth_left, std::vector<HDRound>& rounds,
                       std::vector<ExecutionTrace>& out) {
  if (depth_left == 0) {
    ExecutionTrace t;
    t.rounds = rounds;
    t.output_a = u->output;
    t.output_b = v->output;
    out.push_back(t);
    return;
  }
  HDAction a = hd_action(u, xi), b = hd_action(v, yi);
  if (a == kLost || b == kLost)
    throw std::logic_error("hd_execute: input fell out of the tree");
  auto step = [&](int ae, int be, HDRound::Class cls) {
    rounds.push_back({cls, ae, be});
    hd_execute(u->child[ae].get(), v->child[be].get(), xi, yi, depth_left - 1, rounds, out);
    rounds.pop_back();
  };
  if (a != kReceive && b != kReceive) {
    step(a == kSend0 ? kSd0 : kSd1, b == kSend0 ? kSd0 : kSd1, HDRound::kWasted);
  } else if (a != kReceive) {
    int bit = (a == kSend0) ? 0 : 1;
    step(bit ? kSd1 : kSd0, bit ? kRc1 : kRc0, HDRound::kClassical);
  } else if (b != kReceive) {
    int bit = (b == kSend0) ? 0 : 1;
    step(bit ? kRc1 : kRc0, bit ? kSd1 : kSd0, HDRound::kClassical);
  } else {
    for (int sa = 0; sa < 2; ++sa)
      for (int sb = 0; sb < 2; ++sb)
        step(sa ? kRc1 : kRc0, sb ? kRc1 : kRc0, HDRound::kSilent);
  }
}

}  // namespace detail

inline std::vector<ExecutionTrace> execute_all(const HDProtocol& P, std::size_t xi,
                                               std::size_t yi) {
  std::vector<ExecutionTrace> out;
  std::vector<HDRound> rounds;
  detail::hd_execute(P.alice.get(), P.bob.get(), xi, yi, P.depth, rounds, out);
  return out;
}

// Structural bullets on both trees, then exhaustive execution over all input
// pairs and adversary branches checking that the two leaves agree.
inline ValidationReport validate_hd(const HDProtocol& P) {
  ValidationReport rep;
  if (!P.alice || !P.bob) {
    rep.problems.push_back("missing tree");
    return rep;
  }
  for (std::size_t i = 0; i < P.x_size; ++i)
    if (!P.alice->inputs.get(i)) rep.problems.push_back("Alice root does not cover domain");
  for (std::size_t i = 0; i < P.y_size; ++i)
    if (!P.bob->inputs.get(i)) rep.problems.push_back("Bob root does not cover domain");
  detail::hd_validate_tree(P.alice.get(), P.depth, "A", "", rep);
  detail::hd_validate_tree(P.bob.get(), P.depth, "B", "", rep);
  if (!rep.ok()) return rep;
  for (std::size_t xi = 0; xi < P.x_size; ++xi)
    for (std::size_t yi = 0; yi < P.y_size; ++yi) {
      std::vector<ExecutionTrace> traces;
      try {
        traces = execute_all(P, xi, yi);
      } catch (const std::logic_error& e) {
        rep.problems.push_back(std::string("execution (") + std::to_string(xi) + "," +
                               std::to_string(yi) + "): " + e.what());
        continue;
      }
      for (const auto& t : traces)
        if (t.output_a != t.output_b) {
          rep.problems.push_back("outputs disagree on (" + std::to_string(xi) + "," +
                                 std::to_string(yi) + ")");
          break;
        }
    }
  return rep;
}

inline bool hd_solves(const HDProtocol& P, const Relation& R, std::string* why = nullptr) {
  for (std::size_t xi = 0; xi < R.x_size; ++xi)
    for (std::size_t yi = 0; yi < R.y_size; ++yi)
      for (const auto& t : execute_all(P, xi, yi)) {
        if (t.output_a != t.output_b || !R.solves(xi, yi, t.output_a)) {
          if (why)
            *why = "bad output at (" + std::to_string(xi) + "," + std::to_string(yi) + ")";
          return false;
        }
      }
  return true;
}

// Depth-0 protocol whose roots cover the full domains. Useful as the carrier
// of an empty transcript.
inline HDProtocol hd_trivial(const Relation& R) {
  HDProtocol P;
  P.depth = 0;
  P.x_size = R.x_size;
  P.y_size = R.y_size;
  P.alice = std::make_shared<HDNode>();
  P.bob = std::make_shared<HDNode>();
  P.alice->inputs = DynBitset(R.x_size);
  P.bob->inputs = DynBitset(R.y_size);
  for (std::size_t i = 0; i < R.x_size; ++i) P.alice->inputs.set(i);
  for (std::size_t i = 0; i < R.y_size; ++i) P.bob->inputs.set(i);
  return P;
}

struct ConsistencySets {
  std::vector<std::size_t> x, y;
  // Unique vertex determined by (input, transcript), as an edge-label path.
  std::map<std::size_t, std::string> x_vertex, y_vertex;
};

// Inputs whose forced walk matches the bit string: a sender must send the
// transcript bit, a receiver is fed it.
inline ConsistencySets consistent_inputs(const HDProtocol& P, const std::vector<int>& pi) {
  if ((int)pi.size() > P.depth) throw std::invalid_argument("consistent_inputs: |pi| > depth");
  static const char* names[4] = {"r0", "r1", "s0", "s1"};
  auto walk = [&](const HDNode* root, std::size_t idx) -> std::optional<std::string> {
    const HDNode* v = root;
    std::string path;
    for (int bit : pi) {
      HDAction act = hd_action(v, idx);
      int edge;
      if (act == kReceive) edge = bit ? kRc1 : kRc0;
      else if (act == kSend0 && bit == 0) edge = kSd0;
      else if (act == kSend1 && bit == 1) edge = kSd1;
      else return std::nullopt;
      path += names[edge];
      v = v->child[edge].get();
    }
    return path;
  };
  ConsistencySets out;
  for (std::size_t xi = 0; xi < P.x_size; ++xi)
    if (auto p = walk(P.alice.get(), xi)) {
      out.x.push_back(xi);
      out.x_vertex[xi] = *p;
    }
  for (std::size_t yi = 0; yi < P.y_size; ++yi)
    if (auto p = walk(P.bob.get(), yi)) {
      out.y.push_back(yi);
      out.y_vertex[yi] = *p;
    }
  return out;
}

// All rounds classical whenever both players hold the same inner function.
inline bool is_partially_hd(const HDProtocol& P, const Relation& R) {
  if (R.x_mux.empty() || R.y_mux.empty())
    throw std::invalid_argument("is_partially_hd: relation has no function components");
  for (std::size_t xi = 0; xi < R.x_size; ++xi)
    for (std::size_t yi = 0; yi < R.y_size; ++yi) {
      if (!(R.x_mux[xi].g == R.y_mux[yi].g)) continue;
      for (const auto& t : execute_all(P, xi, yi))
        if (!t.all_classical()) return false;
    }
  return true;
}

namespace detail {

// Lift one player's view of a standard protocol. Past a leaf of the standard
// tree, Alice pads by sending 0 and Bob pads by receiving, which keeps
// padding rounds classical.
inline HDNodePtr lift_side(int player, const ProtoNode* sv, int depth_left,
                           const std::vector<std::size_t>& members, std::size_t domain) {
  if (members.empty()) return nullptr;
  auto v = std::make_shared<HDNode>();
  v->inputs = DynBitset(domain);
  for (auto i : members) v->inputs.set(i);
  if (depth_left == 0) {
    v->output = sv->output;
    return v;
  }
  if (sv->is_leaf) {
    if (player == 0)
      v->child[kSd0] = lift_side(player, sv, depth_left - 1, members, domain);
    else {
      v->child[kRc0] = lift_side(player, sv, depth_left - 1, members, domain);
      v->child[kRc1] = lift_side(player, sv, depth_left - 1, members, domain);
    }
    return v;
  }
  if (sv->owner == player) {
    for (int b = 0; b < 2; ++b) {
      std::uint32_t cmask = (player == 0) ? sv->child[b]->xmask : sv->child[b]->ymask;
      std::vector<std::size_t> sub;
      for (auto i : members)
        if ((cmask >> i) & 1) sub.push_back(i);
      v->child[b ? kSd1 : kSd0] =
          lift_side(player, sv->child[b].get(), depth_left - 1, sub, domain);
    }
  } else {
    for (int b = 0; b < 2; ++b)
      v->child[b ? kRc1 : kRc0] =
          lift_side(player, sv->child[b].get(), depth_left - 1, members, domain);
  }
  return v;
}

}  // namespace detail

// A standard protocol as a half-duplex protocol of the same depth.
inline HDProtocol lift_standard(const ProtocolTree& std_protocol, const Relation& R) {
  HDProtocol P;
  P.depth = std_protocol.depth();
  P.x_size = R.x_size;
  P.y_size = R.y_size;
  std::vector<std::size_t> xs, ys;
  for (std::size_t i = 0; i < R.x_size; ++i) xs.push_back(i);
  for (std::size_t i = 0; i < R.y_size; ++i) ys.push_back(i);
  P.alice = detail::lift_side(0, std_protocol.root.get(), P.depth, xs, R.x_size);
  P.bob = detail::lift_side(1, std_protocol.root.get(), P.depth, ys, R.y_size);
  return P;
}

namespace detail {

// Pads a standard protocol to uniform depth: below each leaf, Alice-owned
// chain nodes whose 1-edge leads to an empty copy of the leaf.
inline ProtoNodePtr pad_to_depth(const ProtoNode* v, int depth_left) {
  auto n = std::make_shared<ProtoNode>();
  *n = *v;
  n->child[0] = nullptr;
  n->child[1] = nullptr;
  if (v->is_leaf) {
    if (depth_left == 0) return n;
    n->is_leaf = false;
    n->owner = 0;
    ProtoNode dead = *v;
    dead.xmask = 0;
    dead.ymask = 0;
    n->child[0] = pad_to_depth(v, depth_left - 1);
    n->child[1] = pad_to_depth(&dead, depth_left - 1);
    return n;
  }
  n->child[0] = pad_to_depth(v->child[0].get(), depth_left - 1);
  n->child[1] = pad_to_depth(v->child[1].get(), depth_left - 1);
  return n;
}

}  // namespace detail

// --- Reduction of the multiplexor composition to fixed-function compositions.

namespace detail {

struct RtPerG {
  bool trivial = true;  // one side of the composition is empty: nothing to run
  std::map<std::uint64_t, std::size_t> x_index, y_index;  // matrix key -> index
  ProtoNodePtr padded;                                    // uniform depth c
};

// Per-input state while building the reduction protocol.
struct RtSim {
  const ProtoNode* node = nullptr;  // position in the padded sub-protocol
  std::size_t sub_index = 0;        // index in the per-g composition relation
  int claim = 0;                    // announced answer i*n+j (Bob: as received)
  int own = 0;                      // Bob only: his own run's answer
  int abit = 0, xbit = 0;           // row value and matrix entry (Bob: received)
  int verdict = 0;
};

}  // namespace detail

// The protocol from the reduction lemma, as a partially half-duplex protocol
// for the multiplexor composition of f with n-bit inner functions. Phase 1
// runs the caller's sub-protocol for the player's own function (padded to the
// common depth c; during padding Alice sends 0 and Bob receives, so rounds
// stay classical when the functions agree). Alice then announces her answer
// (i_A, j_A) in ceil(log2(m*n)) bits, the row value a_{i_A} (strong mode
// only) and the entry X_{i_A,j_A}. Bob checks the announcement against his
// own run and input and answers one bit: 1 means the protocol outputs
// (i_A, j_A), 0 means it outputs "bot", which is only possible when the two
// functions differ. Depth is exactly c + ceil(log2(m*n)) + 3 in strong mode
// and one less in standard mode (no row value announced).
inline HDProtocol reduction_transform(const TruthTable& f, int n,
                                      const std::map<std::uint64_t, ProtocolTree>& protocols,
                                      bool strong = true) {
  const int m = f.arity;
  const Relation R = mux_compose(f, n, strong);
  int L = 0;
  while ((1 << L) < m * n) ++L;
  int c = 0;
  for (const auto& [gbits, tree] : protocols) c = std::max(c, tree.depth());

  std::map<std::uint64_t, detail::RtPerG> per_g;
  for (const auto& g : all_functions(n)) {
    detail::RtPerG pg;
    if (!g.is_constant()) {
      Relation comp = compose(f, g, strong);
      if (comp.x_size > 0 && comp.y_size > 0) {
        auto it = protocols.find(g.bits);
        if (it == protocols.end())
          throw std::invalid_argument("reduction_transform: missing protocol for g=" +
                                      g.to_hex());
        pg.trivial = false;
        for (std::size_t i = 0; i < comp.x_matrices.size(); ++i)
          pg.x_index[comp.x_matrices[i]] = i;
        for (std::size_t i = 0; i < comp.y_matrices.size(); ++i)
          pg.y_index[comp.y_matrices[i]] = i;
        pg.padded = detail::pad_to_depth(it->second.root.get(), c);
      }
    }
    per_g[g.bits] = std::move(pg);
  }

  const int extra = strong ? 3 : 2;
  const int D = c + L + extra;
  const int entry_round = c + L + extra - 2;  // Alice sends X_{i_A,j_A}
  const int final_round = D - 1;              // Bob sends the verdict

  auto alice_action = [&](const detail::RtSim& s, int r) -> HDAction {
    if (r < c) {
      if (!s.node) return kSend0;  // trivial g: no sub-protocol to run
      if (s.node->is_leaf || s.node->owner != 0) return kReceive;
      bool in1 = s.node->child[1] && ((s.node->child[1]->xmask >> s.sub_index) & 1);
      bool in0 = s.node->child[0] && ((s.node->child[0]->xmask >> s.sub_index) & 1);
      return in1 && !in0 ? kSend1 : kSend0;
    }
    if (r < c + L) return ((s.claim >> (L - 1 - (r - c))) & 1) ? kSend1 : kSend0;
    if (strong && r == c + L) return s.abit ? kSend1 : kSend0;
    if (r == entry_round) return s.xbit ? kSend1 : kSend0;
    return kReceive;  // final round: the verdict comes back
  };
  auto bob_action = [&](const detail::RtSim& s, int r) -> HDAction {
    if (r < c) {
      if (!s.node || s.node->is_leaf || s.node->owner != 1) return kReceive;
      bool in1 = s.node->child[1] && ((s.node->child[1]->ymask >> s.sub_index) & 1);
      bool in0 = s.node->child[0] && ((s.node->child[0]->ymask >> s.sub_index) & 1);
      return in1 && !in0 ? kSend1 : kSend0;
    }
    if (r < final_round) return kReceive;
    return s.verdict ? kSend1 : kSend0;
  };

  auto alice_step = [&](detail::RtSim s, std::size_t idx, int r, int bit) -> detail::RtSim {
    const TruthTable& g = R.x_mux[idx].g;
    BooleanMatrix X = BooleanMatrix::from_key(m, n, R.x_mux[idx].payload);
    if (r < c && s.node && !s.node->is_leaf) s.node = s.node->child[bit].get();
    if (r + 1 == c) {
      s.claim = (s.node && s.node->output != kNoOutput) ? (int)s.node->output : 0;
      int i = s.claim / n, j = s.claim % n;
      s.abit = g.eval(X.row(i));
      s.xbit = X.entry(i, j);
    }
    if (r == final_round) s.verdict = bit;
    return s;
  };
  auto bob_step = [&](detail::RtSim s, std::size_t idx, int r, int bit) -> detail::RtSim {
    const TruthTable& g = R.y_mux[idx].g;
    BooleanMatrix Y = BooleanMatrix::from_key(m, n, R.y_mux[idx].payload);
    if (r < c && s.node && !s.node->is_leaf) s.node = s.node->child[bit].get();
    if (r + 1 == c)
      s.own = (s.node && s.node->output != kNoOutput) ? (int)s.node->output : 0;
    if (r >= c && r < c + L) s.claim = (s.claim << 1) | bit;
    if (strong && r == c + L) s.abit = bit;
    if (r == entry_round) {
      s.xbit = bit;
      // All announcements are in: decide the verdict.
      s.verdict = 0;
      if (s.claim < m * n && s.claim == s.own) {
        int i = s.claim / n, j = s.claim % n;
        bool ok = (s.xbit != Y.entry(i, j));
        if (strong && s.abit == g.eval(Y.row(i))) ok = false;
        if (ok) s.verdict = 1;
      }
    }
    return s;
  };

  struct Group {
    std::size_t idx;
    detail::RtSim s;
  };

  std::function<HDNodePtr(int, const std::vector<Group>&, bool)> build =
      [&](int r, const std::vector<Group>& gs, bool alice) -> HDNodePtr {
    if (gs.empty()) return nullptr;
    auto v = std::make_shared<HDNode>();
    v->inputs = DynBitset(alice ? R.x_size : R.y_size);
    for (const auto& g : gs) v->inputs.set(g.idx);
    if (r == D) {
      std::size_t out = kNoOutput;
      for (const auto& g : gs) {
        std::size_t o = g.s.verdict ? (std::size_t)g.s.claim : R.bottom_output;
        if (out == kNoOutput) out = o;
        else if (out != o)
          throw std::logic_error("reduction_transform: leaf output mismatch");
      }
      v->output = out;
      return v;
    }
    std::vector<Group> snd[2], rcv[2];
    for (const auto& g : gs) {
      HDAction a = alice ? alice_action(g.s, r) : bob_action(g.s, r);
      if (a == kReceive) {
        for (int b = 0; b < 2; ++b) {
          Group adv = g;
          adv.s = alice ? alice_step(g.s, g.idx, r, b) : bob_step(g.s, g.idx, r, b);
          rcv[b].push_back(adv);
        }
      } else {
        int b = (a == kSend1) ? 1 : 0;
        Group adv = g;
        adv.s = alice ? alice_step(g.s, g.idx, r, b) : bob_step(g.s, g.idx, r, b);
        snd[b].push_back(adv);
      }
    }
    v->child[kSd0] = build(r + 1, snd[0], alice);
    v->child[kSd1] = build(r + 1, snd[1], alice);
    v->child[kRc0] = build(r + 1, rcv[0], alice);
    v->child[kRc1] = build(r + 1, rcv[1], alice);
    return v;
  };

  std::vector<Group> ax, bx;
  for (std::size_t i = 0; i < R.x_size; ++i) {
    Group g{i, {}};
    const auto& pg = per_g.at(R.x_mux[i].g.bits);
    if (!pg.trivial) {
      g.s.node = pg.padded.get();
      g.s.sub_index = pg.x_index.at(R.x_mux[i].payload);
    }
    if (c == 0) {
      g.s.claim = (g.s.node && g.s.node->output != kNoOutput) ? (int)g.s.node->output : 0;
      BooleanMatrix X = BooleanMatrix::from_key(m, n, R.x_mux[i].payload);
      g.s.abit = R.x_mux[i].g.eval(X.row(g.s.claim / n));
      g.s.xbit = X.entry(g.s.claim / n, g.s.claim % n);
    }
    ax.push_back(g);
  }
  for (std::size_t i = 0; i < R.y_size; ++i) {
    Group g{i, {}};
    const auto& pg = per_g.at(R.y_mux[i].g.bits);
    if (!pg.trivial) {
      g.s.node = pg.padded.get();
      g.s.sub_index = pg.y_index.at(R.y_mux[i].payload);
    }
    if (c == 0)
      g.s.own = (g.s.node && g.s.node->output != kNoOutput) ? (int)g.s.node->output : 0;
    bx.push_back(g);
  }

  HDProtocol P;
  P.depth = D;
  P.x_size = R.x_size;
  P.y_size = R.y_size;
  P.alice = build(0, ax, true);
  P.bob = build(0, bx, false);
  return P;
}

}  // namespace kwlab
