#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gamebpa {

/// Termination weight; rewriting can square weights, so this must not overflow.
using Weight = boost::multiprecision::cpp_int;

bool valid_identifier(const std::string& name);

/// Name of an atomic action. Two labels are equal iff their names are equal.
struct ActionLabel {
  std::string name;

  ActionLabel() = default;
  explicit ActionLabel(std::string n);

  auto operator<=>(const ActionLabel&) const = default;
};

/// A player identity in a game declaration ("P", "O", "P1", ...).
struct Role {
  std::string name;

  Role() = default;
  explicit Role(std::string n);

  auto operator<=>(const Role&) const = default;
};

/// Maps action labels to the role that decides them.
struct GameDeclaration {
  std::vector<Role> players;                 // ordered, at least two distinct
  std::map<ActionLabel, Role> ownership;

  std::optional<Role> owner_of(const ActionLabel& label) const;
  bool has_player(const Role& role) const;
};

/// Node kinds in structural order; the order defines the canonical term ordering.
enum class TermKind : std::uint8_t { Deadlock, Action, Seq, Alt, OppAlt, Play };

const char* kind_name(TermKind kind);

/// Immutable process term over atomic actions, deadlock, sequential composition,
/// alternative composition, opponent's alternative composition and the playing
/// operator. Copies share structure and are cheap.
class Term {
 public:
  /// Default-constructs as deadlock.
  Term();

  static Term action(ActionLabel label);
  static Term action(std::string name);
  static Term deadlock();
  static Term seq(Term left, Term right);
  static Term alt(Term left, Term right);
  static Term opp_alt(Term left, Term right);
  static Term play(Term left, Term right);
  static Term make(TermKind kind, Term left, Term right);

  TermKind kind() const;
  bool is_action() const { return kind() == TermKind::Action; }
  bool is_deadlock() const { return kind() == TermKind::Deadlock; }
  bool is_binary() const;

  const ActionLabel& label() const;  // Action nodes only
  Term left() const;                 // binary nodes only
  Term right() const;

  std::size_t node_count() const;

  /// Identity of the underlying node; distinct from structural equality.
  const void* node_id() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

/// Exact tree equality (no theory).
bool structural_equal(const Term& a, const Term& b);

/// Deterministic total order on terms: Deadlock < Action (by name) < Seq < Alt
/// < OppAlt < Play, recursing lexicographically through children.
int compare(const Term& a, const Term& b);

/// Canonical form modulo associativity/commutativity of +: nested Alt chains are
/// flattened, their summands sorted by `compare` and rebuilt left-associated.
/// Children of every other operator are canonicalized recursively; Seq
/// association is left untouched (A5 is a rewrite rule, not an AC identity).
Term ac_flatten(const Term& t);

/// Equality modulo AC of +.
bool ac_equal(const Term& a, const Term& b);

/// Summands of an Alt spine in left-to-right order; a non-Alt term is its own
/// single summand.
std::vector<Term> summands(const Term& t);

/// Termination measure. Every directed rewrite rule strictly decreases it:
///   weight(a) = weight(delta) = 2
///   weight(s + t)  = weight(s) + weight(t)
///   weight(s . t)  = weight(s)^2 * weight(t)
///   weight(s $ t)  = weight(s) + weight(t) + 1
///   weight(s & t)  = (weight(s) * weight(t))^2
Weight weight(const Term& t);

/// Labels an action of which can be the first move of t.
std::vector<ActionLabel> initial_labels(const Term& t);

struct OwnershipWarning {
  std::string message;
};

/// Advisory check: flags opponent-choice operands whose first moves the viewer
/// itself owns, and labels missing from the ownership map. Never mutates.
std::vector<OwnershipWarning> validate_ownership(const Term& t,
                                                 const GameDeclaration& decl,
                                                 const Role& viewer);

}  // namespace gamebpa
