// Acceptance suite: drives the CLI for the published deduction goldens and the
// library property suites at full scale, printing one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.

#include "gamebpa/selftest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace gamebpa;

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what << " (" << detail << ")\n";
  if (!pass) ++failures;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
  double seconds = 0.0;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string first_line(const std::string& s) {
  auto nl = s.find('\n');
  return nl == std::string::npos ? s : s.substr(0, nl);
}

void golden_play(int criterion, const std::string& cli, const std::string& fixtures,
                 const std::string& name, const std::string& decl,
                 const std::vector<std::string>& terms,
                 const std::string& expected) {
  std::string cmd = cli + " play " + fixtures + "/" + decl;
  for (const auto& t : terms) cmd += " " + fixtures + "/" + t;
  CommandResult r = run_command(cmd);
  bool pass = r.exit_code == 0 && first_line(r.output) == expected &&
              r.seconds < 1.0;
  std::ostringstream detail;
  detail << name << ": got '" << first_line(r.output) << "', exit " << r.exit_code
         << ", " << r.seconds << "s";
  report(criterion, pass, "golden deduction", detail.str());
}

void suite_criterion(int criterion, const std::string& what, SuiteResult result,
                     double budget_seconds) {
  bool pass = result.failures == 0 && result.seconds < budget_seconds;
  std::ostringstream detail;
  detail << result.cases << " cases, " << result.failures << " failures, "
         << result.seconds << "s of " << budget_seconds << "s";
  report(criterion, pass, what, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <fixtures-dir>\n";
    return 2;
  }
  std::string cli = argv[1];
  std::string fixtures = argv[2];

  golden_play(1, cli, fixtures, "submitting order", "submitting_order.game",
              {"submitting_order_view_p.term", "submitting_order_o_strategy.term"},
              "start . write . submit . store");
  golden_play(1, cli, fixtures, "transaction", "transaction.game",
              {"transaction_view_p.term", "transaction_o_strategy.term"},
              "start . operate . abort . rollback");
  golden_play(1, cli, fixtures, "purchasing", "purchasing.game",
              {"purchasing_p_strategy.term", "purchasing_o_strategy.term"},
              "start . shopping . sPlane . oPlane . pOffLine");

  golden_play(2, cli, fixtures, "three-player purchasing",
              "purchasing_extended.game",
              {"purchasing_extended_p1.term", "purchasing_extended_p2.term",
               "purchasing_extended_p3.term"},
              "start . shopping . sPlane . oPlane . pOffLine . ByBank");

  SelftestConfig big;
  big.seed = 20260810;
  big.count = 10000;

  suite_criterion(3, "every rewrite step strictly decreases the weight",
                  suite_weight_decrease(big), 60.0);
  suite_criterion(4, "full-mode normal forms are basic terms",
                  suite_normal_form_purity(big), 60.0);

  SelftestConfig mid = big;
  mid.count = 1000;
  suite_criterion(5, "rewriting preserves bisimilarity", suite_soundness(mid),
                  120.0);
  suite_criterion(6, "bisimilarity coincides with AC-equal normal forms",
                  suite_completeness(mid), 120.0);

  SelftestConfig half = big;
  half.count = 500;
  suite_criterion(7, "plays equal the maximal common strategy trace",
                  suite_play_correctness(half), 300.0);
  suite_criterion(8, "bisimilarity is a congruence for +, ., $ and &",
                  suite_congruence(half), 120.0);

  suite_criterion(9, "print then parse is the identity",
                  suite_parser_roundtrip(big), 60.0);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance check(s) failed\n";
  return 1;
}
