#pragma once

#include "gamebpa/game.hpp"
#include "gamebpa/rewrite.hpp"
#include "gamebpa/term.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gamebpa {

using Rng = std::mt19937_64;

struct TermGenOptions {
  int max_depth = 8;
  int alphabet = 5;  // action labels a, b, c, ...
  double deadlock_prob = 0.12;
  double leaf_prob = 0.30;
};

/// Random closed term using all six constructors.
Term random_term(Rng& rng, const TermGenOptions& opts = {});

/// Random bisimilarity-preserving edits: commuting or reassociating sums,
/// duplicating a summand, toggling between + and $, adding or dropping a
/// + delta, playing an action against itself.
Term perturb_equivalent(const Term& t, Rng& rng, int edits = 3);

struct RandomGame {
  GameTree tree;
  GameDeclaration decl;
};

struct GameGenOptions {
  int max_depth = 5;
  int max_branching = 3;
  int players = 2;  // 2 or 3
  bool alternate_owners = false;
  std::size_t max_combinations = 96;  // regenerate larger games
};

/// Random game tree with globally unique move labels plus the matching
/// declaration. The product of per-role strategy counts stays within
/// max_combinations so exhaustive play checks are cheap.
RandomGame random_game(Rng& rng, const GameGenOptions& opts = {});

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;  // JSON text of the first failure, if any
  double seconds = 0.0;

  bool passed() const { return failures == 0; }
};

struct SelftestConfig {
  std::uint64_t seed = 42;
  std::size_t count = 1000;
  /// Disabled rules and step caps propagate into every suite, which makes
  /// deliberately crippled rule sets fail loudly.
  RewriteOptions rewrite;
};

SuiteResult suite_weight_decrease(const SelftestConfig& cfg);
SuiteResult suite_normal_form_purity(const SelftestConfig& cfg);
SuiteResult suite_parser_roundtrip(const SelftestConfig& cfg);
SuiteResult suite_soundness(const SelftestConfig& cfg);
SuiteResult suite_completeness(const SelftestConfig& cfg);
SuiteResult suite_congruence(const SelftestConfig& cfg);
SuiteResult suite_play_correctness(const SelftestConfig& cfg);

/// All suites in a fixed order.
std::vector<SuiteResult> run_selftest(const SelftestConfig& cfg);

}  // namespace gamebpa
