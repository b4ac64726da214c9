#pragma once

#include "gamebpa/term.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gamebpa {

/// Directed rules of the term rewriting system. A1/A2 are absent: commutativity
/// and associativity of + are handled by AC matching, not by rewriting.
enum class RuleId : std::uint8_t {
  A3,   // x + x -> x
  A4,   // (x + y) . z -> x . z + y . z
  A5,   // (x . y) . z -> x . (y . z)
  OA1,  // x $ y -> x + y
  DL1,  // x + delta -> x
  DL2,  // delta . x -> delta
  PO1,  // a & a -> a
  PO2,  // a & b -> delta
  PO3,  // delta & x -> delta
  PO4,  // x & delta -> delta
  PO5,  // a & a . y -> a . y
  PO6,  // a & b . y -> delta
  PO7,  // a . x & a -> a . x
  PO8,  // a . x & b -> delta
  PO9,  // a . x & a . y -> a . (x & y)
  PO10, // a . x & b . y -> delta
  PO11, // (x $ y) & z -> (x + y) & z
  PO12, // x & (y $ z) -> x & (y + z)
  PO13, // (x + y) & z -> x & z + y & z
  PO14, // x & (y + z) -> x & y + x & z
};

constexpr std::size_t kRuleCount = 20;

const char* rule_name(RuleId rule);
std::optional<RuleId> rule_from_name(std::string_view name);

/// `Full` applies every rule; `PView` disables OA1, so an opponent's
/// alternative survives unless a playing operator consumes it via PO11/PO12.
enum class RewriteMode { Full, PView };

/// Redex selection strategy. Leftmost-innermost is the default; the outermost
/// variant exists to cross-check confluence in tests.
enum class RewriteStrategy { LeftmostInnermost, LeftmostOutermost };

struct RewriteOptions {
  RewriteMode mode = RewriteMode::Full;
  RewriteStrategy strategy = RewriteStrategy::LeftmostInnermost;
  std::size_t step_cap = 1'000'000;
  std::uint32_t disabled_rules = 0;  // bit per RuleId; testing hook

  bool rule_enabled(RuleId rule) const;
};

std::uint32_t rule_bit(RuleId rule);

/// One application of a rule. `before` and `after` are whole terms; `position`
/// is the path of child indices (0 = left, 1 = right) from the root to the
/// rewritten subterm.
struct RewriteStep {
  RuleId rule;
  std::vector<int> position;
  Term before;
  Term after;
};

struct RewriteTrace {
  Term initial;
  Term final;
  std::vector<RewriteStep> steps;
};

/// Raised when normalization exceeds the step cap; indicates an engine bug,
/// not a user error.
class StepLimitError : public std::runtime_error {
 public:
  explicit StepLimitError(std::size_t cap);
};

/// Applies exactly one rule at the strategy-selected redex, or nothing when the
/// term is a normal form for the active rule set. Rules whose left-hand side
/// mentions + (A3, A4, DL1, PO13, PO14) match the flattened summand multiset;
/// split rules isolate the canonically smallest summand.
std::optional<RewriteStep> rewrite_step(const Term& t,
                                        const RewriteOptions& opts = {});

/// Rewrites to exhaustion. Terminates for every closed term because each step
/// strictly decreases the weight measure.
RewriteTrace normalize(const Term& t, const RewriteOptions& opts = {});

/// Like normalize but discards the step log.
Term normal_form(const Term& t, const RewriteOptions& opts = {});

/// True iff t uses only actions, deadlock, sequential and alternative
/// composition. Full-mode normal forms are always basic.
bool is_basic_term(const Term& t);

nlohmann::json trace_to_json(const RewriteTrace& trace);

}  // namespace gamebpa
