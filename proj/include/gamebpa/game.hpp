#pragma once

#include "gamebpa/rewrite.hpp"
#include "gamebpa/term.hpp"

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamebpa {

/// Move tree of a game. A node with no children is a completed play; a node
/// with one child is a forced move (no owner); a node with two or more
/// children is a choice resolved by `owner`.
struct GameTree {
  std::optional<Role> owner;
  std::vector<std::pair<ActionLabel, GameTree>> children;

  bool is_leaf() const { return children.empty(); }
};

bool tree_equal(const GameTree& a, const GameTree& b);

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict-mode ownership violation; callers may want to treat it differently
/// from structural errors.
class OwnershipError : public GameError {
 public:
  using GameError::GameError;
};

struct GameTreeOptions {
  /// When set, ownership problems (viewer-owned opponent branches, labels
  /// without owners) are errors instead of warnings.
  bool strict = false;
};

struct GameTreeResult {
  GameTree tree;
  std::vector<std::string> warnings;
};

/// Reads a play-free term as a game tree in `viewer`'s encoding: + is a branch
/// the viewer resolves, $ a branch someone else resolves, sequencing a forced
/// path. Branch owners for $ come from the declaration's label ownership, with
/// a warning-and-fallback to the other role in two-player games.
GameTreeResult game_tree_from_term(const Term& t, const GameDeclaration& decl,
                                   const Role& viewer,
                                   const GameTreeOptions& opts = {});

/// A strategy subtree: at every branch owned by `role` exactly one child is
/// retained, at every other branch all children are. `source` is the tree the
/// strategy was pruned from.
struct Strategy {
  Role role;
  GameTree tree;
  GameTree source;
};

/// All strategies of `role`, ordered by the child choices made at role-owned
/// branches (depth-first, first branch varies slowest).
std::vector<Strategy> enumerate_strategies(const GameTree& tree, const Role& role);

/// Number of strategies without materializing them: a sum over the children of
/// role-owned branches, a product elsewhere.
std::size_t count_strategies(const GameTree& tree, const Role& role);

/// Renders a strategy back into a process term: forced moves and the single
/// retained child of own branches become sequencing, branches owned by other
/// roles become $-sums.
Term strategy_to_term(const Strategy& strategy);

using MoveSequence = std::vector<ActionLabel>;

/// Prefix-closed set of move sequences with its maximal element when the set
/// is a chain.
struct PlaySet {
  std::vector<MoveSequence> traces;  // sorted, includes the empty sequence
  std::optional<MoveSequence> maximal;
};

/// Brute-force intersection of the strategies' root-to-node move sequences.
/// All strategies must stem from the same game tree.
PlaySet intersect_strategies(const std::vector<Strategy>& strategies);

/// All action sequences a term can perform, prefix-closed. Computed from the
/// operational transitions, independent of the rewrite engine.
std::vector<MoveSequence> term_traces(const Term& t);

/// Intersection of the terms' trace sets (the command-line oracle for plays
/// given as terms rather than strategy objects).
PlaySet intersect_term_traces(const std::vector<Term>& terms);

struct PlayReport {
  bool pass = false;
  Term play_term;          // normal form of the left-associated play
  MoveSequence maximal_trace;
  RewriteTrace trace;
};

/// Checks that playing the strategies (left-associated, rewritten to normal
/// form) yields exactly the maximal common move sequence of the strategies.
/// A mismatch is reported as pass = false, never as an error.
PlayReport verify_play(const std::vector<Strategy>& strategies,
                       const GameDeclaration& decl,
                       const RewriteOptions& opts = {});

/// Sequence rendered as a term: right-nested sequencing, or deadlock for the
/// empty sequence (no common move means the play stops immediately).
Term sequence_term(const MoveSequence& moves);

std::string format_sequence(const MoveSequence& moves);

std::string export_dot(const GameTree& tree);

nlohmann::json strategy_to_json(const Strategy& strategy);
nlohmann::json report_to_json(const PlayReport& report);

}  // namespace gamebpa
