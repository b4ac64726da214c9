#include "gamebpa/game.hpp"
#include "gamebpa/lts.hpp"
#include "gamebpa/parser.hpp"
#include "gamebpa/rewrite.hpp"
#include "gamebpa/selftest.hpp"
#include "gamebpa/term.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace gamebpa;
using nlohmann::json;

// Exit codes shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitNotBisimilar = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitOracleMismatch = 4;
constexpr int kExitOwnership = 5;
constexpr int kExitSelftest = 6;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Term parse_term_file(const std::string& path) {
  try {
    return parse_term(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.span.line) + ":" +
                     std::to_string(e.span.column) + ": error: " + e.what());
  }
}

GameDeclaration parse_decl_file(const std::string& path) {
  try {
    return parse_game_decl(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.span.line) + ":" +
                     std::to_string(e.span.column) + ": error: " + e.what());
  }
}

RewriteMode parse_mode(const std::string& mode) {
  return mode == "p-view" ? RewriteMode::PView : RewriteMode::Full;
}

// Deduction-style trace: the initial term, then one line per step with the
// rule that produced it.
void print_trace_text(const RewriteTrace& trace, std::ostream& os) {
  os << "      " << print_term(trace.initial) << "\n";
  for (const auto& step : trace.steps)
    os << std::setw(4) << rule_name(step.rule) << "  " << print_term(step.after)
       << "\n";
}

struct CommonOpts {
  std::string mode = "full";
  std::string output = "text";
  std::size_t step_cap = 1'000'000;
  std::size_t state_cap = 100'000;
  bool trace = false;
};

int run_normalize(const std::string& file, const CommonOpts& c) {
  Term t = parse_term_file(file);
  RewriteOptions opts;
  opts.mode = parse_mode(c.mode);
  opts.step_cap = c.step_cap;
  RewriteTrace trace = normalize(t, opts);
  if (c.output == "json") {
    std::cout << trace_to_json(trace).dump(2) << "\n";
  } else {
    if (c.trace) print_trace_text(trace, std::cout);
    std::cout << print_term(trace.final) << "\n";
  }
  return kExitOk;
}

int run_bisim(const std::string& file_a, const std::string& file_b,
              const CommonOpts& c) {
  Term a = parse_term_file(file_a);
  Term b = parse_term_file(file_b);
  LtsOptions opts{c.state_cap};
  if (c.output == "dot") {
    std::cout << export_dot(build_lts(a, opts)) << export_dot(build_lts(b, opts));
  }
  BisimResult r = bisimilar(a, b, opts);
  if (c.output == "json") {
    json rel = json::array();
    for (const auto& [i, j] : r.relation) rel.push_back({i, j});
    std::cout << json{{"equivalent", r.equivalent},
                      {"witness", format_sequence(r.witness)},
                      {"relation", std::move(rel)}}
                     .dump(2)
              << "\n";
  } else if (c.output == "text") {
    if (r.equivalent)
      std::cout << "bisimilar\n";
    else
      std::cout << "not bisimilar\nwitness: " << format_sequence(r.witness)
                << "\n";
  }
  return r.equivalent ? kExitOk : kExitNotBisimilar;
}

int run_play(const std::string& decl_file, const std::vector<std::string>& files,
             bool oracle, const CommonOpts& c) {
  GameDeclaration decl = parse_decl_file(decl_file);
  std::vector<Term> terms;
  for (const auto& f : files) terms.push_back(parse_term_file(f));
  if (terms.size() < 2) throw InputError("play needs at least two strategy terms");
  if (terms.size() != decl.players.size())
    std::cerr << "warning: " << terms.size() << " strategy terms for "
              << decl.players.size() << " declared players\n";

  Term play = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) play = Term::play(play, terms[i]);

  RewriteOptions opts;
  opts.mode = parse_mode(c.mode);
  opts.step_cap = c.step_cap;
  RewriteTrace trace = normalize(play, opts);
  Term result = trace.final;

  bool oracle_pass = true;
  std::string maximal_text;
  if (oracle) {
    PlaySet common = intersect_term_traces(terms);
    if (common.maximal) {
      maximal_text = format_sequence(*common.maximal);
      oracle_pass = ac_equal(result, sequence_term(*common.maximal));
    } else {
      maximal_text = "(no unique maximal trace)";
      oracle_pass = false;
    }
  }

  if (c.output == "json") {
    json report{{"pass", oracle ? json(oracle_pass) : json(nullptr)},
                {"play_term", print_term(result)},
                {"maximal_trace", maximal_text},
                {"steps", trace_to_json(trace)["steps"]}};
    std::cout << report.dump(2) << "\n";
  } else {
    if (c.trace) print_trace_text(trace, std::cout);
    std::cout << print_term(result) << "\n";
    if (result.is_deadlock()) std::cout << "deadlock: no common execution\n";
    if (oracle)
      std::cout << "oracle: " << (oracle_pass ? "PASS" : "MISMATCH")
                << " maximal = " << maximal_text << "\n";
  }
  return oracle && !oracle_pass ? kExitOracleMismatch : kExitOk;
}

int run_strategies(const std::string& decl_file, const std::string& term_file,
                   const std::string& role_name, bool strict,
                   const CommonOpts& c) {
  GameDeclaration decl = parse_decl_file(decl_file);
  Term t = parse_term_file(term_file);
  if (!valid_identifier(role_name)) throw InputError("invalid role name");
  Role role{role_name};

  GameTreeOptions opts;
  opts.strict = strict;
  GameTreeResult gt = game_tree_from_term(t, decl, role, opts);
  for (const auto& w : gt.warnings) std::cerr << "warning: " << w << "\n";

  auto strategies = enumerate_strategies(gt.tree, role);
  if (c.output == "json") {
    json out = json::array();
    for (const auto& s : strategies) {
      json j = strategy_to_json(s);
      j["term"] = print_term(strategy_to_term(s));
      out.push_back(std::move(j));
    }
    std::cout << out.dump(2) << "\n";
  } else if (c.output == "dot") {
    std::cout << export_dot(gt.tree);
    for (const auto& s : strategies) std::cout << export_dot(s.tree);
  } else {
    for (const auto& s : strategies)
      std::cout << print_term(strategy_to_term(s)) << "\n";
  }
  return kExitOk;
}

int run_selftest_cmd(std::uint64_t seed, std::size_t count,
                     const std::vector<std::string>& disabled,
                     const std::string& counterexample_file,
                     const CommonOpts& c) {
  SelftestConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.rewrite.step_cap = c.step_cap;
  for (const auto& name : disabled) {
    auto rule = rule_from_name(name);
    if (!rule) throw InputError("unknown rule '" + name + "'");
    cfg.rewrite.disabled_rules |= rule_bit(*rule);
  }

  if (count == 0) {
    std::cout << "warning: --count 0, nothing checked (vacuous pass)\n";
    return kExitOk;
  }

  auto results = run_selftest(cfg);
  bool all_ok = true;
  std::string first_counterexample;
  std::string failed_suite;
  for (const auto& r : results) {
    if (!r.passed() && all_ok) {
      first_counterexample = r.counterexample;
      failed_suite = r.name;
    }
    all_ok = all_ok && r.passed();
  }

  // No timings here: identical seed and inputs must give byte-identical output.
  if (c.output == "json") {
    json out = json::array();
    for (const auto& r : results)
      out.push_back({{"suite", r.name},
                     {"cases", r.cases},
                     {"failures", r.failures}});
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(22) << "suite" << std::right
              << std::setw(8) << "cases" << std::setw(10) << "failures"
              << "  status\n";
    for (const auto& r : results)
      std::cout << std::left << std::setw(22) << r.name << std::right
                << std::setw(8) << r.cases << std::setw(10) << r.failures
                << "  " << (r.passed() ? "ok" : "FAIL") << "\n";
  }

  if (!all_ok) {
    std::ofstream out(counterexample_file);
    out << first_counterexample << "\n";
    std::cerr << "suite '" << failed_suite << "' failed; first counterexample "
              << "written to " << counterexample_file << "\n";
    return kExitSelftest;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gamebpa: process terms with player/opponent choice - rewriting, "
               "transition semantics, bisimulation and game strategies"};
  app.require_subcommand(1);

  CommonOpts c;

  std::string norm_file;
  auto* norm = app.add_subcommand("normalize", "Rewrite a term to normal form");
  norm->add_option("file", norm_file, "term file")->required();
  norm->add_option("--mode", c.mode, "rule set: full or p-view")
      ->check(CLI::IsMember({"full", "p-view"}));
  norm->add_flag("--trace", c.trace, "print every rewrite step");
  norm->add_option("--output", c.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  norm->add_option("--step-cap", c.step_cap, "rewrite step limit");

  std::string bisim_a, bisim_b;
  auto* bis = app.add_subcommand("bisim", "Decide strong bisimilarity of two terms");
  bis->add_option("file_a", bisim_a, "first term file")->required();
  bis->add_option("file_b", bisim_b, "second term file")->required();
  bis->add_option("--output", c.output, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  bis->add_option("--state-cap", c.state_cap, "state limit per LTS");

  std::string play_decl;
  std::vector<std::string> play_files;
  bool play_oracle = false;
  auto* play = app.add_subcommand("play", "Play strategy terms against each other");
  play->add_option("declaration", play_decl, "game declaration file")->required();
  play->add_option("strategies", play_files, "strategy term files (two or more)")
      ->required()
      ->expected(-2);
  play->add_flag("--oracle", play_oracle,
                 "check the result against the trace-intersection oracle");
  play->add_option("--mode", c.mode, "rule set: full or p-view")
      ->check(CLI::IsMember({"full", "p-view"}));
  play->add_flag("--trace", c.trace, "print every rewrite step");
  play->add_option("--output", c.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  play->add_option("--step-cap", c.step_cap, "rewrite step limit");

  std::string strat_decl, strat_term, strat_role;
  bool strat_strict = false;
  auto* strat = app.add_subcommand("strategies",
                                   "Enumerate the strategies of a role");
  strat->add_option("declaration", strat_decl, "game declaration file")->required();
  strat->add_option("term", strat_term, "play-free term file")->required();
  strat->add_option("--role", strat_role, "role whose strategies to list")
      ->required();
  strat->add_flag("--strict", strat_strict,
                  "treat ownership problems as errors");
  strat->add_option("--output", c.output, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  std::uint64_t st_seed = 42;
  std::size_t st_count = 1000;
  std::vector<std::string> st_disabled;
  std::string st_cx_file = "selftest-counterexample.json";
  auto* st = app.add_subcommand("selftest", "Run the randomized property suites");
  st->add_option("--seed", st_seed, "random seed");
  st->add_option("--count", st_count, "cases per suite");
  st->add_option("--disable-rule", st_disabled,
                 "disable rewrite rules by name (sanity hook for the suites)");
  st->add_option("--counterexample-file", st_cx_file,
                 "where to write the first counterexample");
  st->add_option("--output", c.output, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  st->add_option("--step-cap", c.step_cap, "rewrite step limit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*norm) return run_normalize(norm_file, c);
    if (*bis) return run_bisim(bisim_a, bisim_b, c);
    if (*play) return run_play(play_decl, play_files, play_oracle, c);
    if (*strat)
      return run_strategies(strat_decl, strat_term, strat_role, strat_strict, c);
    if (*st) return run_selftest_cmd(st_seed, st_count, st_disabled, st_cx_file, c);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const StepLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const StateLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const OwnershipError& e) {
    std::cerr << "ownership error: " << e.what() << "\n";
    return kExitOwnership;
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
