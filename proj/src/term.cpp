#include "gamebpa/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace gamebpa {

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

ActionLabel::ActionLabel(std::string n) : name(std::move(n)) {
  if (!valid_identifier(name))
    throw std::invalid_argument("invalid action label: '" + name + "'");
}

Role::Role(std::string n) : name(std::move(n)) {
  if (!valid_identifier(name))
    throw std::invalid_argument("invalid role name: '" + name + "'");
}

std::optional<Role> GameDeclaration::owner_of(const ActionLabel& label) const {
  auto it = ownership.find(label);
  if (it == ownership.end()) return std::nullopt;
  return it->second;
}

bool GameDeclaration::has_player(const Role& role) const {
  return std::find(players.begin(), players.end(), role) != players.end();
}

const char* kind_name(TermKind kind) {
  switch (kind) {
    case TermKind::Deadlock: return "deadlock";
    case TermKind::Action: return "action";
    case TermKind::Seq: return "seq";
    case TermKind::Alt: return "alt";
    case TermKind::OppAlt: return "opp-alt";
    case TermKind::Play: return "play";
  }
  return "?";
}

struct Term::Node {
  TermKind kind;
  ActionLabel label;                  // Action only
  std::shared_ptr<const Node> left;   // binary only
  std::shared_ptr<const Node> right;
};

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term::Term() : Term(deadlock()) {}

Term Term::action(ActionLabel label) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Action;
  n->label = std::move(label);
  return Term(std::move(n));
}

Term Term::action(std::string name) { return action(ActionLabel(std::move(name))); }

Term Term::deadlock() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Deadlock;
    return n;
  }();
  return Term(node);
}

Term Term::make(TermKind kind, Term left, Term right) {
  switch (kind) {
    case TermKind::Seq:
    case TermKind::Alt:
    case TermKind::OppAlt:
    case TermKind::Play:
      break;
    default:
      throw std::invalid_argument("Term::make requires a binary kind");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = left.node_;
  n->right = right.node_;
  return Term(std::move(n));
}

Term Term::seq(Term l, Term r) { return make(TermKind::Seq, std::move(l), std::move(r)); }
Term Term::alt(Term l, Term r) { return make(TermKind::Alt, std::move(l), std::move(r)); }
Term Term::opp_alt(Term l, Term r) { return make(TermKind::OppAlt, std::move(l), std::move(r)); }
Term Term::play(Term l, Term r) { return make(TermKind::Play, std::move(l), std::move(r)); }

TermKind Term::kind() const { return node_->kind; }

bool Term::is_binary() const {
  auto k = kind();
  return k == TermKind::Seq || k == TermKind::Alt || k == TermKind::OppAlt ||
         k == TermKind::Play;
}

const ActionLabel& Term::label() const {
  if (!is_action()) throw std::logic_error("label() on non-action term");
  return node_->label;
}

Term Term::left() const {
  if (!is_binary()) throw std::logic_error("left() on leaf term");
  return Term(node_->left);
}

Term Term::right() const {
  if (!is_binary()) throw std::logic_error("right() on leaf term");
  return Term(node_->right);
}

const void* Term::node_id() const { return node_.get(); }

std::size_t Term::node_count() const {
  std::size_t count = 0;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    ++count;
    if (n->left) stack.push_back(n->left.get());
    if (n->right) stack.push_back(n->right.get());
  }
  return count;
}

bool structural_equal(const Term& a, const Term& b) { return compare(a, b) == 0; }

int compare(const Term& a, const Term& b) {
  if (a.node_id() == b.node_id()) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Deadlock:
      return 0;
    case TermKind::Action: {
      int c = a.label().name.compare(b.label().name);
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    default: {
      int c = compare(a.left(), b.left());
      if (c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
}

std::vector<Term> summands(const Term& t) {
  std::vector<Term> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    if (cur.kind() == TermKind::Alt) {
      // Push right first so the left spine comes out in reading order.
      stack.push_back(cur.right());
      stack.push_back(cur.left());
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

Term ac_flatten(const Term& t) {
  switch (t.kind()) {
    case TermKind::Deadlock:
    case TermKind::Action:
      return t;
    case TermKind::Alt: {
      std::vector<Term> parts;
      for (const Term& s : summands(t)) parts.push_back(ac_flatten(s));
      std::stable_sort(parts.begin(), parts.end(),
                       [](const Term& a, const Term& b) { return compare(a, b) < 0; });
      Term acc = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) acc = Term::alt(acc, parts[i]);
      return acc;
    }
    default:
      return Term::make(t.kind(), ac_flatten(t.left()), ac_flatten(t.right()));
  }
}

bool ac_equal(const Term& a, const Term& b) {
  return structural_equal(ac_flatten(a), ac_flatten(b));
}

namespace {

Weight weight_rec(const Term& t, std::unordered_map<const void*, Weight>& memo) {
  auto it = memo.find(t.node_id());
  if (it != memo.end()) return it->second;
  Weight w;
  switch (t.kind()) {
    case TermKind::Deadlock:
    case TermKind::Action:
      w = 2;
      break;
    case TermKind::Alt:
      w = weight_rec(t.left(), memo) + weight_rec(t.right(), memo);
      break;
    case TermKind::Seq: {
      Weight l = weight_rec(t.left(), memo);
      w = l * l * weight_rec(t.right(), memo);
      break;
    }
    case TermKind::OppAlt:
      w = weight_rec(t.left(), memo) + weight_rec(t.right(), memo) + 1;
      break;
    case TermKind::Play: {
      Weight p = weight_rec(t.left(), memo) * weight_rec(t.right(), memo);
      w = p * p;
      break;
    }
  }
  memo.emplace(t.node_id(), w);
  return w;
}

}  // namespace

Weight weight(const Term& t) {
  std::unordered_map<const void*, Weight> memo;
  return weight_rec(t, memo);
}

namespace {

void initial_labels_rec(const Term& t, std::vector<ActionLabel>& out) {
  switch (t.kind()) {
    case TermKind::Deadlock:
      break;
    case TermKind::Action:
      out.push_back(t.label());
      break;
    case TermKind::Seq:
      initial_labels_rec(t.left(), out);
      break;
    case TermKind::Alt:
    case TermKind::OppAlt:
      initial_labels_rec(t.left(), out);
      initial_labels_rec(t.right(), out);
      break;
    case TermKind::Play: {
      // A play can only start with moves both operands offer.
      std::vector<ActionLabel> l, r;
      initial_labels_rec(t.left(), l);
      initial_labels_rec(t.right(), r);
      for (const auto& a : l)
        if (std::find(r.begin(), r.end(), a) != r.end()) out.push_back(a);
      break;
    }
  }
}

}  // namespace

std::vector<ActionLabel> initial_labels(const Term& t) {
  std::vector<ActionLabel> out;
  initial_labels_rec(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void validate_rec(const Term& t, const GameDeclaration& decl, const Role& viewer,
                  std::vector<OwnershipWarning>& out) {
  switch (t.kind()) {
    case TermKind::Deadlock:
      return;
    case TermKind::Action: {
      if (!decl.owner_of(t.label()))
        out.push_back({"no owner declared for action '" + t.label().name + "'"});
      return;
    }
    case TermKind::OppAlt: {
      for (const Term& operand : {t.left(), t.right()}) {
        auto labels = initial_labels(operand);
        bool all_viewer = !labels.empty();
        for (const auto& a : labels) {
          auto owner = decl.owner_of(a);
          if (!owner || *owner != viewer) {
            all_viewer = false;
            break;
          }
        }
        if (all_viewer)
          out.push_back({"opponent choice starting with '" + labels.front().name +
                         "' is owned by viewer role '" + viewer.name + "'"});
      }
      break;
    }
    default:
      break;
  }
  if (t.is_binary()) {
    validate_rec(t.left(), decl, viewer, out);
    validate_rec(t.right(), decl, viewer, out);
  }
}

}  // namespace

std::vector<OwnershipWarning> validate_ownership(const Term& t,
                                                 const GameDeclaration& decl,
                                                 const Role& viewer) {
  std::vector<OwnershipWarning> out;
  validate_rec(t, decl, viewer, out);
  return out;
}

}  // namespace gamebpa
