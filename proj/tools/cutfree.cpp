// Command-line front end: prove, check, countermodel, generate, bench.
//
// Exit codes: 0 Provable / ok / model found, 1 Unprovable / check failed /
// no model, 2 ResourceExceeded, 3 bad input or flags.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cutfree/generator.hpp"
#include "cutfree/proof_io.hpp"
#include "cutfree/prover.hpp"
#include "cutfree/semantics.hpp"
#include "cutfree/syntax.hpp"

namespace {

using namespace cutfree;

constexpr int kInputError = 3;

struct RunConfig {
  std::string logic = "ck";
  std::string strategy = "auto";
  std::uint64_t max_nodes = 1'000'000;
  std::uint32_t max_depth = 200;
  std::uint64_t timeout_ms = 0;
  std::string output = "text";
  std::string proof_file;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool timing = false;

  LogicId logic_id() const {
    auto l = parse_logic(logic);
    if (!l) throw std::invalid_argument("unknown logic '" + logic + "'");
    return *l;
  }
  StrategyId strategy_id() const {
    auto s = parse_strategy(strategy);
    if (!s) throw std::invalid_argument("unknown strategy '" + strategy + "'");
    return *s;
  }
  SearchLimits limits() const {
    SearchLimits l;
    l.max_nodes = max_nodes;
    l.max_depth = max_depth;
    if (timeout_ms) l.timeout_ms = timeout_ms;
    return l;
  }
};

void add_search_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--logic", cfg.logic, "k|t|k4|ck|ckid|ckmp|ckmpid|ckcem|ckcemid|ckmpcem|ckmpcemid");
  cmd->add_option("--strategy", cfg.strategy, "naive|marked|marked-descendants|dp|auto");
  cmd->add_option("--max-nodes", cfg.max_nodes, "node budget")->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", cfg.max_depth, "modal depth budget")->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-ms", cfg.timeout_ms, "wall-clock budget")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--threads", cfg.threads, "worker threads (bench)")->check(CLI::PositiveNumber);
}

void add_output_flag(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--output", cfg.output, "text|json|latex")
      ->check(CLI::IsMember({"text", "json", "latex"}));
}

int exit_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::Provable:
      return 0;
    case VerdictKind::Unprovable:
      return 1;
    case VerdictKind::ResourceExceeded:
      return 2;
  }
  return kInputError;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_text_stats(const Verdict& v) {
  const SearchStats& s = v.stats;
  std::cout << "nodes " << s.nodes << ", max depth " << s.max_depth_reached << ", memo hits " << s.memo_hits
            << ", elapsed " << s.elapsed_us << " us\n";
  std::cout << "modal applications:";
  bool any = false;
  for (std::size_t i = 0; i < kRuleCount; ++i)
    if (s.modal_applications[i]) {
      std::cout << " " << name(static_cast<RuleId>(i)) << " " << s.modal_applications[i];
      any = true;
    }
  std::cout << (any ? "\n" : " none\n");
}

int cmd_prove(const RunConfig& cfg, const std::string& input) {
  LogicId logic = cfg.logic_id();
  StrategyId strategy = resolve_strategy(logic, cfg.strategy_id());
  Sequent s = parse_sequent(input);
  require_signature(s, logic);
  Verdict v = Prover(logic, strategy).prove(s, cfg.limits());
  if (cfg.output == "json") {
    std::cout << verdict_to_json(v, logic, strategy, cfg.timing).dump(2) << "\n";
  } else if (cfg.output == "latex") {
    std::cout << "% " << name(v.kind) << " in " << name(logic) << "\n";
    if (v.witness) std::cout << derivation_to_latex(*v.witness);
  } else {
    std::cout << name(v.kind);
    if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
    std::cout << "\nlogic " << name(logic) << ", strategy " << name(strategy) << "\n";
    print_text_stats(v);
    if (v.witness) std::cout << derivation_to_text(*v.witness);
  }
  if (v.witness && !cfg.proof_file.empty())
    write_file(cfg.proof_file, derivation_to_json(*v.witness).dump(2) + "\n");
  return exit_code(v.kind);
}

int cmd_check(const RunConfig& cfg, const std::string& path, bool strict, bool allow_cut) {
  LogicId logic = cfg.logic_id();
  DerivationPtr d;
  try {
    d = parse_derivation(read_file(path));
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  CheckReport r = check_derivation(*d, logic, {strict, allow_cut});
  if (cfg.output == "json") {
    nlohmann::json j = {{"ok", r.ok}, {"logic", std::string(name(logic))}};
    if (!r.ok) j["failure"] = {{"path", r.path}, {"sequent", r.sequent}, {"message", r.message}};
    std::cout << j.dump(2) << "\n";
  } else if (r.ok) {
    std::cout << "ok: valid " << name(logic) << " derivation, " << node_count(*d) << " nodes\n";
  } else {
    std::cout << "invalid at " << r.path << ": " << r.message << "\n  sequent: " << r.sequent << "\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_countermodel(const RunConfig& cfg, const std::string& input, int max_worlds) {
  LogicId logic = cfg.logic_id();
  Sequent s = parse_sequent(input);
  require_signature(s, logic);
  auto cm = countermodel(s, logic, max_worlds);
  if (!cm) {
    std::cout << "no countermodel up to " << max_worlds << " worlds (not a proof)\n";
    return 1;
  }
  std::cout << to_json(*cm).dump(2) << "\n";
  return 0;
}

int cmd_generate(const RunConfig& cfg, std::size_t count, std::size_t size) {
  LogicId logic = cfg.logic_id();
  Generator gen(cfg.seed, logic);
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < count; ++i) {
    Generated g = gen.provable(size);
    if (cfg.output == "json") {
      all.push_back({{"sequent", print_sequent(g.sequent)}, {"derivation", derivation_to_json(*g.derivation)}});
    } else if (cfg.output == "latex") {
      std::cout << derivation_to_latex(*g.derivation);
    } else {
      std::cout << print_sequent(g.sequent) << "\n";
    }
  }
  if (cfg.output == "json") std::cout << all.dump(2) << "\n";
  return 0;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

int cmd_bench(const RunConfig& cfg, const std::string& suite, std::size_t count, std::size_t size) {
  LogicId logic = cfg.logic_id();
  StrategyId strategy = resolve_strategy(logic, cfg.strategy_id());
  std::vector<Formula> formulas;
  if (suite == "corpus") {
    if (size > 10) throw std::invalid_argument("corpus size bound is at most 10");
    if (count == 0) size = 0;
    for (Formula f : enumerate_formulas(logic, size)) {
      if (formulas.size() >= count) break;
      formulas.push_back(f);
    }
  } else if (suite == "random") {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t i = 0; i < count; ++i) formulas.push_back(random_formula(rng, logic, 1 + rng() % size));
  } else {
    if (!is_conditional(logic)) throw std::invalid_argument("the nested suite needs a conditional logic");
    for (std::size_t d = 1; d <= count; ++d) formulas.push_back(nested_cem(static_cast<int>(d)));
  }
  std::vector<std::string> rows(formulas.size());
  auto work = [&](std::size_t start, std::size_t step) {
    for (std::size_t i = start; i < formulas.size(); i += step) {
      Verdict v = Prover(logic, strategy).prove(Sequent{formulas[i]}, cfg.limits());
      std::string text = suite == "nested" ? "nested_cem(" + std::to_string(i + 1) + ")" : print_formula(formulas[i]);
      std::ostringstream row;
      row << csv_field(text) << "," << name(logic) << "," << name(strategy) << "," << name(v.kind) << ","
          << v.stats.nodes << "," << v.stats.max_depth_reached << "," << v.stats.elapsed_us;
      rows[i] = row.str();
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::max(1u, cfg.threads);
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work, t, n);
  work(0, n);
  for (auto& t : pool) t.join();
  std::cout << "formula,logic,strategy,verdict,nodes,depth,microseconds\n";
  for (const auto& r : rows) std::cout << r << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cutfree: proof search and checking for cut-free conditional and modal sequent calculi"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string input;
  auto* prove = app.add_subcommand("prove", "decide a sequent (comma-separated formulas)");
  add_search_flags(prove, cfg);
  add_output_flag(prove, cfg);
  prove->add_option("--proof", cfg.proof_file, "write the derivation as JSON to FILE");
  prove->add_flag("--timing", cfg.timing, "include elapsed time in JSON output");
  prove->add_option("sequent", input, "sequent, e.g. \"~(a => b), (a & c) => b\"")->required();

  std::string proof_path;
  bool strict = false, allow_cut = false;
  auto* check = app.add_subcommand("check", "validate a derivation JSON file");
  check->add_option("--logic", cfg.logic, "logic to check against");
  add_output_flag(check, cfg);
  check->add_flag("--strict-marks", strict, "reject MP on marked formulas");
  check->add_flag("--allow-cut", allow_cut, "accept Cut nodes");
  auto* proof_opt = check->add_option("--proof", proof_path, "derivation file");
  check->add_option("file", proof_path, "derivation file")->excludes(proof_opt);

  int max_worlds = 3;
  auto* cm = app.add_subcommand("countermodel", "search small models falsifying a formula");
  cm->add_option("--logic", cfg.logic, "logic (frame class)");
  cm->add_option("--max-worlds", max_worlds, "largest model size")->check(CLI::Range(1, 4));
  cm->add_option("formula", input, "formula or sequent")->required();

  std::size_t count = 10, size = 12;
  auto* gen = app.add_subcommand("generate", "print random provable sequents");
  gen->add_option("--logic", cfg.logic, "logic");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_option("--count", count, "number of sequents");
  gen->add_option("--size", size, "rule applications per derivation");
  add_output_flag(gen, cfg);

  std::string suite = "random";
  auto* bench = app.add_subcommand("bench", "CSV timings over a formula suite");
  add_search_flags(bench, cfg);
  bench->add_option("--suite", suite, "corpus|random|nested")->check(CLI::IsMember({"corpus", "random", "nested"}));
  bench->add_option("--count", count, "number of instances");
  auto* bench_size = bench->add_option("--size", size, "formula size bound (corpus, random)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*prove) return cmd_prove(cfg, input);
    if (*check) {
      if (proof_path.empty()) throw std::invalid_argument("check needs a derivation file");
      return cmd_check(cfg, proof_path, strict, allow_cut);
    }
    if (*cm) return cmd_countermodel(cfg, input, max_worlds);
    if (*gen) return cmd_generate(cfg, count, size);
    if (*bench) {
      if (suite == "corpus" && !*bench_size) size = 7;
      return cmd_bench(cfg, suite, count, size);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
