#pragma once

#include "gamebpa/term.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gamebpa {

using StateId = std::size_t;

/// One SOS transition of a term: the action and the successor, where an empty
/// successor means successful termination after that action.
struct TermTransition {
  ActionLabel label;
  std::optional<Term> target;
};

/// Single-step successors under the operational rules: action prefix, the four
/// alternative rules (also used for the opponent's alternative), the two
/// sequencing rules, and the synchronized playing rules. Deadlock has none.
/// Results are deduplicated and sorted deterministically.
std::vector<TermTransition> transitions(const Term& t);

struct Transition {
  StateId from;
  ActionLabel label;
  StateId to;
};

/// Finite labelled transition system over canonical terms. Action-labelled
/// successful terminations live in `terminating`, not in `transitions`.
struct Lts {
  std::vector<Term> states;  // canonical via ac_flatten; root is index 0
  StateId root = 0;
  std::vector<Transition> transitions;
  std::vector<std::pair<StateId, ActionLabel>> terminating;
};

class StateLimitError : public std::runtime_error {
 public:
  explicit StateLimitError(std::size_t cap);
};

struct LtsOptions {
  std::size_t state_cap = 100'000;
};

/// Breadth-first closure of `transitions` from t, deduplicating states modulo
/// AC of +.
Lts build_lts(const Term& t, const LtsOptions& opts = {});

struct BisimResult {
  bool equivalent = false;
  /// When equivalent: pairs (state of first LTS, state of second LTS) of one
  /// bisimulation relation containing the roots.
  std::vector<std::pair<StateId, StateId>> relation;
  /// When not equivalent: a shortest action sequence leading to the mismatch;
  /// its last action is enabled on exactly one side at that point.
  std::vector<ActionLabel> witness;
};

/// Decides strong bisimilarity by partition refinement, treating each
/// action-labelled termination as a transition into one distinguished tick
/// state (kept apart from ordinary deadlock states).
BisimResult bisimilar(const Term& t, const Term& u, const LtsOptions& opts = {});

/// Graphviz digraph; states are labelled with printed terms and successful
/// termination is a doubly circled sink. Node order follows StateId.
std::string export_dot(const Lts& lts);

nlohmann::json lts_to_json(const Lts& lts);

}  // namespace gamebpa
