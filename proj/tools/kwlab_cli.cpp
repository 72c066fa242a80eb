// Batch harness: verification suites, complexity tables, single-relation
// queries, and JSON reports. Exit codes: 0 success, 1 check failure,
// 2 usage/config error, 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kwlab/cache.hpp"
#include "kwlab/cover.hpp"
#include "kwlab/formula.hpp"
#include "kwlab/graph.hpp"
#include "kwlab/linear_code.hpp"
#include "kwlab/prefix_thick.hpp"
#include "kwlab/rect_game.hpp"
#include "kwlab/relation.hpp"
#include "kwlab/suites.hpp"

using json = nlohmann::json;
using namespace kwlab;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitConfig = 2, kExitBudget = 3;

struct Options {
  unsigned seed = kDefaultSeed;
  std::string cache_path;
  int max_side = 16;
  std::string out_path;
};

void load_config_file(const std::string& path, Options& opt) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "seed") opt.seed = (unsigned)std::stoul(val);
    else if (key == "cache") opt.cache_path = val;
    else if (key == "max_side") opt.max_side = std::stoi(val);
    else if (key == "out") opt.out_path = val;
    else throw std::invalid_argument("unknown config key " + key);
  }
}

void apply_env(Options& opt) {
  if (const char* v = std::getenv("KWLAB_SEED")) opt.seed = (unsigned)std::strtoul(v, nullptr, 10);
  if (const char* v = std::getenv("KWLAB_CACHE")) opt.cache_path = v;
  if (const char* v = std::getenv("KWLAB_MAX_SIDE")) opt.max_side = std::atoi(v);
}

const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    default: return "skipped";
  }
}

void write_or_print(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
}

int emit_checks(const std::vector<CheckResult>& results, const Options& opt) {
  json doc;
  doc["seed"] = opt.seed;
  doc["checks"] = json::array();
  int failures = 0, skips = 0;
  for (const auto& r : results) {
    std::cout << "[" << status_str(r.status) << "] " << r.id << " " << r.name << ": "
              << r.detail << "\n";
    doc["checks"].push_back(
        {{"id", r.id}, {"name", r.name}, {"status", status_str(r.status)}, {"detail", r.detail}});
    if (r.status == CheckStatus::kFail) ++failures;
    if (r.status == CheckStatus::kSkipped) ++skips;
  }
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  if (failures) return kExitFail;
  if (skips) return kExitBudget;
  return kExitOk;
}

TruthTable table_from_hex(const std::string& hex, int arity_hint) {
  int arity = arity_hint;
  if (arity == 0) {
    // 1 nibble covers arity 2, 2 nibbles arity 3, 4 nibbles arity 4, ...
    std::size_t len = hex.size();
    arity = len <= 1 ? 2 : len <= 2 ? 3 : len <= 4 ? 4 : len <= 8 ? 5 : 6;
  }
  return TruthTable::from_hex(arity, hex);
}

int cmd_cc_table(int n, int samples, const Options& opt) {
  ResultCache cache(opt.cache_path);
  SearchBudget budget;
  budget.max_side = opt.max_side;
  std::vector<TruthTable> fs;
  if (n <= 2) {
    fs = all_functions(n);
  } else {
    std::mt19937 rng(opt.seed);
    std::set<std::uint64_t> seen{0, 255};
    fs.push_back(tt_const(3, 0));
    fs.push_back(tt_const(3, 1));
    while ((int)fs.size() < samples + 2) {
      std::uint64_t bits = rng() % 256;
      if (seen.insert(bits).second) fs.emplace_back(3, bits);
    }
  }
  json doc;
  doc["n"] = n;
  doc["rows"] = json::array();
  bool disagreement = false;
  std::cout << "f\tL_game\tD_game\tL_oracle\tD_oracle\tagree\n";
  for (const auto& f : fs) {
    OracleResult oracle = formula_oracle(f, 16);
    long long lg, dg;
    if (f.is_constant()) {
      lg = 0;
      dg = kNegInfDepth;
    } else {
      Relation R = kw_of_function(f);
      auto cached_l = cache.get(R.content_hash(), "size");
      auto cached_d = cache.get(R.content_hash(), "cc");
      if (cached_l && cached_d) {
        lg = *cached_l;
        dg = *cached_d;
      } else {
        RectGame game(R, budget);
        lg = game.exact_size();
        dg = game.exact_cc();
        cache.put(R.content_hash(), "size", lg);
        cache.put(R.content_hash(), "cc", dg);
      }
    }
    bool agree = oracle.size_known && lg == oracle.size && dg == oracle.depth;
    if (!agree) disagreement = true;
    std::cout << f.to_hex() << "\t" << lg << "\t" << depth_str((int)dg) << "\t" << oracle.size
              << "\t" << depth_str(oracle.depth) << "\t" << (agree ? "yes" : "NO") << "\n";
    doc["rows"].push_back({{"f", f.to_hex()},
                           {"L_game", lg},
                           {"D_game", is_neg_inf((int)dg) ? json(nullptr) : json(dg)},
                           {"L_oracle", oracle.size},
                           {"D_oracle", is_neg_inf(oracle.depth) ? json(nullptr) : json(oracle.depth)},
                           {"agree", agree}});
  }
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  return disagreement ? kExitFail : kExitOk;
}

int cmd_kw(const std::string& hex, int arity, const Options& opt) {
  TruthTable f = table_from_hex(hex, arity);
  json doc;
  doc["f"] = f.to_hex();
  doc["arity"] = f.arity;
  if (f.is_constant()) {
    doc["L"] = 0;
    doc["D"] = nullptr;
    std::cout << "constant function: L = 0, D = -inf\n";
  } else {
    SearchBudget budget;
    budget.max_side = opt.max_side;
    Relation R = kw_of_function(f);
    RectGame game(R, budget);
    int L = game.exact_size(), D = game.exact_cc();
    doc["L"] = L;
    doc["D"] = D;
    std::cout << "L(f) = " << L << ", D(f) = " << D << "\n";
    if (f.arity <= 3) {
      OracleResult oracle = formula_oracle(f, 16);
      doc["oracle_agrees"] = oracle.size_known && oracle.size == L && oracle.depth == D;
      std::cout << "oracle agrees: " << (doc["oracle_agrees"].get<bool>() ? "yes" : "NO") << "\n";
      if (!doc["oracle_agrees"].get<bool>()) return kExitFail;
    }
  }
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  return kExitOk;
}

int cmd_winning_set(const std::string& path, const Options& opt) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  int q, m;
  if (!(in >> q >> m)) throw std::invalid_argument("expected header: q m");
  std::vector<Str> strs;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    Str w;
    int s;
    while (ls >> s) w.push_back(s);
    if (w.empty()) continue;
    if ((int)w.size() != m) throw std::invalid_argument("string length != m");
    strs.push_back(w);
  }
  StringSet X(AlphabetProfile(m, q), strs);
  auto rep = verify_winning_size(X);
  std::cout << "|X| = " << rep.set_size << ", |W(X)| = " << rep.winning_size << ", identity "
            << (rep.identity ? "holds" : "FAILS");
  if (rep.oracle_checked)
    std::cout << ", oracle " << (rep.oracle_agrees ? "agrees" : "DISAGREES");
  std::cout << "\n";
  json doc{{"q", q},
           {"m", m},
           {"set_size", rep.set_size},
           {"winning_size", rep.winning_size},
           {"identity", rep.identity},
           {"oracle_checked", rep.oracle_checked},
           {"oracle_agrees", rep.oracle_agrees}};
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  return rep.identity && (!rep.oracle_checked || rep.oracle_agrees) ? kExitOk : kExitFail;
}

int cmd_graph_eq(const std::string& path, const Options& opt) {
  SimpleGraph G = load_graph(path);
  auto eq = verify_graph_eq_ncc(G);
  auto ineq = verify_graph_ineq_bounds(G);
  std::cout << "n = " << G.n << ", chi = " << eq.chromatic << ", equality cover = "
            << eq.cover_number << " (" << (eq.matches ? "matches" : "MISMATCH") << ")\n";
  std::cout << "inequality cover = " << ineq.cover_number << ", bracket "
            << (ineq.vacuous ? "vacuous" : ineq.holds ? "holds" : "FAILS") << "\n";
  json doc{{"n", G.n},
           {"chi", eq.chromatic},
           {"eq_cover", eq.cover_number},
           {"eq_matches", eq.matches},
           {"ineq_cover", ineq.cover_number},
           {"ineq_vacuous", ineq.vacuous},
           {"ineq_holds", ineq.holds}};
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  return eq.matches && ineq.holds ? kExitOk : kExitFail;
}

int cmd_barrier(int m, int code_d, int wx, int wy, const std::string& fhex, const Options& opt) {
  if (m < 2 || m > 4)
    throw std::invalid_argument("barrier: 2 <= m <= 4 at desk scale");
  TruthTable f = fhex.empty()
                     ? TruthTable(m, (1ull << (1ull << (m - 1))) - 1)  // 1 iff x_1 = 0
                     : table_from_hex(fhex, m);
  LinearCode C = find_linear_code(m, code_d);
  auto res = barrier_construct(f, C, wx, wy);
  std::cout << "code: length " << C.length << ", dimension " << C.dimension() << ", distance "
            << C.min_distance() << "\n";
  std::cout << "strong characteristic graph: " << res.edges << " edges over "
            << res.ctx.V.size() << " functions\n";
  std::cout << "coset L = " << res.coset_l[0] << "..; chosen coset " << res.coset
            << ", maximality " << (res.coset_max_ok ? "holds" : "FAILS") << "\n";
  std::cout << "aliveness: " << (res.alive.alive ? "alive" : "not alive")
            << (res.alive.infeasible ? " (L bullet infeasible at these params)" : "") << "\n";
  json doc{{"m", m},
           {"f", f.to_hex()},
           {"code_dimension", C.dimension()},
           {"code_distance", C.min_distance()},
           {"edges", res.edges},
           {"zero_edges", res.zero_edges},
           {"coset", res.coset},
           {"coset_sum_ok", res.coset_sum_ok},
           {"coset_max_ok", res.coset_max_ok},
           {"alive", res.alive.alive},
           {"infeasible", res.alive.infeasible}};
  if (!opt.out_path.empty()) write_or_print(doc, opt.out_path);
  return res.zero_edges && res.coset_max_ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact desk-scale laboratory for communication-game composition machinery"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file");
  auto* seed_opt = app.add_option("--seed", opt.seed, "random seed for sampled sweeps");
  auto* cache_opt = app.add_option("--cache", opt.cache_path, "result cache file");
  auto* side_opt = app.add_option("--max-side", opt.max_side, "solver domain budget");
  auto* out_opt = app.add_option("--out", opt.out_path, "JSON output path");

  auto* suite_cmd = app.add_subcommand("suite", "run a named verification suite");
  std::string suite_name;
  suite_cmd->add_option("name", suite_name, "suite name")->required();

  auto* cc_cmd = app.add_subcommand("cc-table", "tabulate L and D by both solvers");
  int cc_n = 2, cc_samples = 20;
  cc_cmd->add_option("--n", cc_n, "function arity (<= 3)")->required();
  cc_cmd->add_option("--samples", cc_samples, "sample count at n = 3");

  auto* kw_cmd = app.add_subcommand("kw", "L and D of one function's game");
  std::string kw_hex;
  int kw_arity = 0;
  kw_cmd->add_option("--f", kw_hex, "truth table in hex")->required();
  kw_cmd->add_option("--n", kw_arity, "arity (inferred from hex length by default)");

  auto* ws_cmd = app.add_subcommand("winning-set", "winning set of a string set");
  std::string ws_input;
  ws_cmd->add_option("--input", ws_input, "file: 'q m' header then one string per line")
      ->required();

  auto* ge_cmd = app.add_subcommand("graph-eq", "graph equality and inequality covers");
  std::string ge_graph;
  ge_cmd->add_option("--graph", ge_graph, "edge-list or graph6 file")->required();

  auto* bar_cmd = app.add_subcommand("barrier", "edgeless-transcript construction");
  int bar_m = 4, bar_d = 4, bar_wx = 0, bar_wy = 4;
  std::string bar_f;
  bar_cmd->add_option("--m", bar_m, "outer arity")->required();
  bar_cmd->add_option("--code", bar_d, "minimum distance of the searched code")->required();
  bar_cmd->add_option("--wx", bar_wx, "announced first-column weight, Alice")->required();
  bar_cmd->add_option("--wy", bar_wy, "announced first-column weight, Bob")->required();
  bar_cmd->add_option("--f", bar_f, "outer function hex (default: first bit is 0)");

  auto* rep_cmd = app.add_subcommand("report", "run all criteria and emit a JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) load_config_file(config_path, opt);
    apply_env(opt);
    // Explicit flags win over config and environment.
    if (!seed_opt->empty()) opt.seed = seed_opt->as<unsigned>();
    if (!cache_opt->empty()) opt.cache_path = cache_opt->as<std::string>();
    if (!side_opt->empty()) opt.max_side = side_opt->as<int>();
    if (!out_opt->empty()) opt.out_path = out_opt->as<std::string>();

    if (suite_cmd->parsed()) return emit_checks(run_suite(suite_name, opt.seed), opt);
    if (cc_cmd->parsed()) {
      if (cc_n < 1 || cc_n > 3) throw std::invalid_argument("cc-table: n <= 3 required");
      return cmd_cc_table(cc_n, cc_samples, opt);
    }
    if (kw_cmd->parsed()) return cmd_kw(kw_hex, kw_arity, opt);
    if (ws_cmd->parsed()) return cmd_winning_set(ws_input, opt);
    if (ge_cmd->parsed()) return cmd_graph_eq(ge_graph, opt);
    if (bar_cmd->parsed()) return cmd_barrier(bar_m, bar_d, bar_wx, bar_wy, bar_f, opt);
    if (rep_cmd->parsed()) return emit_checks(run_acceptance(opt.seed), opt);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
