#include "gamebpa/game.hpp"

#include "gamebpa/lts.hpp"
#include "gamebpa/parser.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace gamebpa {

bool tree_equal(const GameTree& a, const GameTree& b) {
  if (a.owner != b.owner) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i].first != b.children[i].first) return false;
    if (!tree_equal(a.children[i].second, b.children[i].second)) return false;
  }
  return true;
}

namespace {

struct TreeBuilder {
  const GameDeclaration& decl;
  const Role& viewer;
  const GameTreeOptions& opts;
  std::vector<std::string>& warnings;

  void problem(const std::string& msg) {
    if (opts.strict) throw OwnershipError(msg);
    warnings.push_back(msg);
  }

  // Replaces every leaf of `tree` with `cont`.
  static GameTree graft(GameTree tree, const GameTree& cont) {
    if (tree.is_leaf()) return cont;
    for (auto& [move, sub] : tree.children) sub = graft(std::move(sub), cont);
    return tree;
  }

  GameTree build(const Term& t) {
    switch (t.kind()) {
      case TermKind::Deadlock:
        throw GameError("deadlock has no game tree reading");
      case TermKind::Play:
        throw GameError("a play has no game tree; give one view at a time");
      case TermKind::Action:
        return GameTree{std::nullopt, {{t.label(), GameTree{}}}};
      case TermKind::Seq:
        return graft(build(t.left()), build(t.right()));
      case TermKind::Alt:
        return merge(alt_parts(t, TermKind::Alt), /*viewer_owned=*/true);
      case TermKind::OppAlt:
        return merge(alt_parts(t, TermKind::OppAlt), /*viewer_owned=*/false);
    }
    throw GameError("unhandled term kind");
  }

  // Operands of a maximal + or $ spine, in reading order.
  static std::vector<Term> alt_parts(const Term& t, TermKind kind) {
    std::vector<Term> out;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
      Term cur = stack.back();
      stack.pop_back();
      if (cur.kind() == kind) {
        stack.push_back(cur.right());
        stack.push_back(cur.left());
      } else {
        out.push_back(cur);
      }
    }
    return out;
  }

  GameTree merge(const std::vector<Term>& parts, bool viewer_owned) {
    GameTree node;
    for (const Term& part : parts) {
      GameTree sub = build(part);
      if (sub.children.size() != 1)
        throw GameError(
            "nested choice without an intervening action cannot be a game "
            "tree branch");
      node.children.push_back(std::move(sub.children.front()));
    }
    std::set<ActionLabel> seen;
    for (const auto& [move, sub] : node.children)
      if (!seen.insert(move).second)
        throw GameError("duplicate branch move '" + move.name + "'");
    node.owner = viewer_owned ? viewer : infer_opponent(node);
    return node;
  }

  Role infer_opponent(const GameTree& node) {
    std::set<Role> owners;
    bool missing = false;
    for (const auto& [move, sub] : node.children) {
      if (auto owner = decl.owner_of(move))
        owners.insert(*owner);
      else
        missing = true;
    }
    if (!missing && owners.size() == 1) {
      Role owner = *owners.begin();
      if (owner != viewer) return owner;
      problem("opponent branch '" + node.children.front().first.name +
              "...' is owned by the viewer '" + viewer.name + "'");
      return fallback(node);
    }
    problem("cannot infer a single owner for opponent branch '" +
            node.children.front().first.name + "...'");
    return fallback(node);
  }

  Role fallback(const GameTree& node) {
    if (decl.players.size() == 2) {
      for (const Role& r : decl.players)
        if (r != viewer) return r;
    }
    throw GameError("ambiguous owner for opponent branch '" +
                    node.children.front().first.name +
                    "...' and no two-player fallback applies");
  }
};

}  // namespace

GameTreeResult game_tree_from_term(const Term& t, const GameDeclaration& decl,
                                   const Role& viewer,
                                   const GameTreeOptions& opts) {
  if (!decl.has_player(viewer))
    throw GameError("viewer role '" + viewer.name + "' is not a declared player");
  GameTreeResult result;
  if (opts.strict) {
    for (const auto& w : validate_ownership(t, decl, viewer))
      throw OwnershipError(w.message);
  } else {
    for (const auto& w : validate_ownership(t, decl, viewer))
      result.warnings.push_back(w.message);
  }
  TreeBuilder builder{decl, viewer, opts, result.warnings};
  result.tree = builder.build(t);
  return result;
}

namespace {

std::vector<GameTree> prunings(const GameTree& node, const Role& role) {
  if (node.is_leaf()) return {node};
  std::vector<std::vector<GameTree>> per_child;
  per_child.reserve(node.children.size());
  for (const auto& [move, sub] : node.children)
    per_child.push_back(prunings(sub, role));

  std::vector<GameTree> out;
  if (node.owner == role && node.children.size() >= 2) {
    // Own branch: keep exactly one child.
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      for (const auto& sub : per_child[i]) {
        GameTree pruned{node.owner, {{node.children[i].first, sub}}};
        out.push_back(std::move(pruned));
      }
    }
  } else {
    // Someone else's branch (or a forced move): keep all children and take
    // every combination of their prunings.
    std::vector<std::size_t> pick(node.children.size(), 0);
    for (;;) {
      GameTree combo{node.owner, {}};
      for (std::size_t i = 0; i < node.children.size(); ++i)
        combo.children.emplace_back(node.children[i].first, per_child[i][pick[i]]);
      out.push_back(std::move(combo));
      std::size_t i = node.children.size();
      while (i > 0) {
        --i;
        if (++pick[i] < per_child[i].size()) break;
        pick[i] = 0;
        if (i == 0) return out;
      }
      if (node.children.empty()) break;
    }
  }
  return out;
}

}  // namespace

std::vector<Strategy> enumerate_strategies(const GameTree& tree, const Role& role) {
  std::vector<Strategy> out;
  for (auto& pruned : prunings(tree, role))
    out.push_back(Strategy{role, std::move(pruned), tree});
  return out;
}

std::size_t count_strategies(const GameTree& tree, const Role& role) {
  if (tree.is_leaf()) return 1;
  if (tree.owner == role && tree.children.size() >= 2) {
    std::size_t sum = 0;
    for (const auto& [move, sub] : tree.children) sum += count_strategies(sub, role);
    return sum;
  }
  std::size_t product = 1;
  for (const auto& [move, sub] : tree.children)
    product *= count_strategies(sub, role);
  return product;
}

namespace {

Term subtree_term(const GameTree& node, const Role& role) {
  std::vector<Term> parts;
  for (const auto& [move, sub] : node.children) {
    Term head = Term::action(move);
    parts.push_back(sub.is_leaf() ? head
                                  : Term::seq(head, subtree_term(sub, role)));
  }
  if (parts.empty())
    throw GameError("cannot render an empty game tree as a term");
  Term acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = Term::opp_alt(acc, parts[i]);  // multi-child nodes belong to others
  return acc;
}

}  // namespace

Term strategy_to_term(const Strategy& strategy) {
  return subtree_term(strategy.tree, strategy.role);
}

namespace {

void collect_paths(const GameTree& node, MoveSequence& prefix,
                   std::set<MoveSequence>& out) {
  out.insert(prefix);
  for (const auto& [move, sub] : node.children) {
    prefix.push_back(move);
    collect_paths(sub, prefix, out);
    prefix.pop_back();
  }
}

PlaySet intersect_sets(const std::vector<std::set<MoveSequence>>& sets) {
  std::set<MoveSequence> common = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    std::set<MoveSequence> next;
    std::set_intersection(common.begin(), common.end(), sets[i].begin(),
                          sets[i].end(), std::inserter(next, next.begin()));
    common = std::move(next);
  }

  PlaySet result;
  result.traces.assign(common.begin(), common.end());
  const MoveSequence* longest = nullptr;
  for (const auto& seq : common)
    if (!longest || seq.size() > longest->size()) longest = &seq;
  if (longest) {
    bool chain = std::all_of(common.begin(), common.end(), [&](const auto& seq) {
      return std::equal(seq.begin(), seq.end(), longest->begin());
    });
    bool unique = std::count_if(common.begin(), common.end(), [&](const auto& s) {
                    return s.size() == longest->size();
                  }) == 1;
    if (chain && unique) result.maximal = *longest;
  }
  return result;
}

}  // namespace

PlaySet intersect_strategies(const std::vector<Strategy>& strategies) {
  if (strategies.empty())
    throw GameError("cannot intersect an empty strategy list");
  for (std::size_t i = 1; i < strategies.size(); ++i)
    if (!tree_equal(strategies[i].source, strategies.front().source))
      throw GameError("strategies stem from different game trees");

  std::vector<std::set<MoveSequence>> sets;
  for (const auto& s : strategies) {
    std::set<MoveSequence> paths;
    MoveSequence prefix;
    collect_paths(s.tree, prefix, paths);
    sets.push_back(std::move(paths));
  }
  return intersect_sets(sets);
}

namespace {

void collect_term_traces(const Term& t, MoveSequence& prefix,
                         std::set<MoveSequence>& out) {
  out.insert(prefix);
  for (const auto& tr : transitions(t)) {
    prefix.push_back(tr.label);
    if (tr.target)
      collect_term_traces(*tr.target, prefix, out);
    else
      out.insert(prefix);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MoveSequence> term_traces(const Term& t) {
  std::set<MoveSequence> out;
  MoveSequence prefix;
  collect_term_traces(t, prefix, out);
  return {out.begin(), out.end()};
}

PlaySet intersect_term_traces(const std::vector<Term>& terms) {
  if (terms.empty()) throw GameError("cannot intersect an empty term list");
  std::vector<std::set<MoveSequence>> sets;
  for (const auto& t : terms) {
    auto traces = term_traces(t);
    sets.emplace_back(traces.begin(), traces.end());
  }
  return intersect_sets(sets);
}

Term sequence_term(const MoveSequence& moves) {
  if (moves.empty()) return Term::deadlock();
  Term acc = Term::action(moves.back());
  for (std::size_t i = moves.size() - 1; i-- > 0;)
    acc = Term::seq(Term::action(moves[i]), acc);
  return acc;
}

std::string format_sequence(const MoveSequence& moves) {
  std::string out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (i) out += " . ";
    out += moves[i].name;
  }
  return out;
}

PlayReport verify_play(const std::vector<Strategy>& strategies,
                       const GameDeclaration& decl, const RewriteOptions& opts) {
  if (strategies.size() < 2)
    throw GameError("a play needs at least two strategies");
  if (strategies.size() != decl.players.size())
    throw GameError("expected one strategy per declared player");
  std::set<Role> roles;
  for (const auto& s : strategies) roles.insert(s.role);
  if (roles.size() != strategies.size())
    throw GameError("strategies must belong to pairwise distinct roles");

  Term play = strategy_to_term(strategies.front());
  for (std::size_t i = 1; i < strategies.size(); ++i)
    play = Term::play(play, strategy_to_term(strategies[i]));

  PlaySet common = intersect_strategies(strategies);

  PlayReport report;
  report.trace = normalize(play, opts);
  report.play_term = report.trace.final;
  if (common.maximal) report.maximal_trace = *common.maximal;
  report.pass = common.maximal.has_value() &&
                ac_equal(report.play_term, sequence_term(report.maximal_trace));
  return report;
}

namespace {

void dot_rec(const GameTree& node, std::size_t& next_id, std::size_t my_id,
             std::ostringstream& os) {
  os << "  n" << my_id << " [label=\"";
  if (node.is_leaf())
    os << "";
  else if (node.owner && node.children.size() >= 2)
    os << node.owner->name;
  os << "\"";
  if (node.is_leaf()) os << ", shape=doublecircle";
  os << "];\n";
  for (const auto& [move, sub] : node.children) {
    std::size_t child_id = next_id++;
    os << "  n" << my_id << " -> n" << child_id << " [label=\"" << move.name
       << "\"];\n";
    dot_rec(sub, next_id, child_id, os);
  }
}

}  // namespace

std::string export_dot(const GameTree& tree) {
  std::ostringstream os;
  os << "digraph game {\n";
  os << "  node [shape=circle];\n";
  std::size_t next_id = 1;
  dot_rec(tree, next_id, 0, os);
  os << "}\n";
  return os.str();
}

nlohmann::json strategy_to_json(const Strategy& strategy) {
  nlohmann::json paths = nlohmann::json::array();
  std::set<MoveSequence> all;
  MoveSequence prefix;
  collect_paths(strategy.tree, prefix, all);
  for (const auto& seq : all) {
    // Only complete root-to-leaf paths; prefixes are implied.
    bool is_leaf_path = true;
    // recompute: a sequence is a leaf path iff no other sequence extends it
    for (const auto& other : all) {
      if (other.size() == seq.size() + 1 &&
          std::equal(seq.begin(), seq.end(), other.begin())) {
        is_leaf_path = false;
        break;
      }
    }
    if (is_leaf_path) paths.push_back(format_sequence(seq));
  }
  return {{"role", strategy.role.name}, {"retained_paths", std::move(paths)}};
}

nlohmann::json report_to_json(const PlayReport& report) {
  return {{"pass", report.pass},
          {"play_term", print_term(report.play_term)},
          {"maximal_trace", format_sequence(report.maximal_trace)},
          {"steps", trace_to_json(report.trace)["steps"]}};
}

}  // namespace gamebpa
