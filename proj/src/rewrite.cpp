#include "gamebpa/rewrite.hpp"

#include "gamebpa/parser.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace gamebpa {

const char* rule_name(RuleId rule) {
  static const char* names[kRuleCount] = {
      "A3",  "A4",  "A5",  "OA1", "DL1", "DL2", "PO1",  "PO2",  "PO3",  "PO4",
      "PO5", "PO6", "PO7", "PO8", "PO9", "PO10", "PO11", "PO12", "PO13", "PO14"};
  return names[static_cast<std::size_t>(rule)];
}

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    auto rule = static_cast<RuleId>(i);
    if (name == rule_name(rule)) return rule;
  }
  return std::nullopt;
}

std::uint32_t rule_bit(RuleId rule) { return 1u << static_cast<unsigned>(rule); }

bool RewriteOptions::rule_enabled(RuleId rule) const {
  if (disabled_rules & rule_bit(rule)) return false;
  if (rule == RuleId::OA1 && mode == RewriteMode::PView) return false;
  return true;
}

StepLimitError::StepLimitError(std::size_t cap)
    : std::runtime_error("rewrite step cap of " + std::to_string(cap) +
                         " exceeded") {}

namespace {

struct Local {
  RuleId rule;
  Term replacement;
};

Term rebuild_sum(const std::vector<Term>& parts) {
  Term acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Term::alt(acc, parts[i]);
  return acc;
}

// Index of the canonically smallest summand (first among AC-equal ties).
std::size_t min_summand(const std::vector<Term>& parts,
                        const std::vector<Term>& canon) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (compare(canon[i], canon[best]) < 0) best = i;
  return best;
}

std::vector<Term> without(const std::vector<Term>& parts, std::size_t skip) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (i != skip) out.push_back(parts[i]);
  return out;
}

// Splits an Alt spine for the distributive rules: x = canonically smallest
// summand, y = the remaining sum in source order.
std::pair<Term, Term> split_sum(const Term& sum) {
  auto parts = summands(sum);
  std::vector<Term> canon;
  canon.reserve(parts.size());
  for (const auto& p : parts) canon.push_back(ac_flatten(p));
  std::size_t x = min_summand(parts, canon);
  return {parts[x], rebuild_sum(without(parts, x))};
}

std::optional<Local> try_alt_rules(const Term& t, const RewriteOptions& o) {
  auto parts = summands(t);
  if (o.rule_enabled(RuleId::DL1)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].is_deadlock())
        return Local{RuleId::DL1, rebuild_sum(without(parts, i))};
    }
  }
  if (o.rule_enabled(RuleId::A3)) {
    std::vector<Term> canon;
    canon.reserve(parts.size());
    for (const auto& p : parts) canon.push_back(ac_flatten(p));
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        if (structural_equal(canon[i], canon[j]))
          return Local{RuleId::A3, rebuild_sum(without(parts, j))};
  }
  return std::nullopt;
}

std::optional<Local> try_seq_rules(const Term& t, const RewriteOptions& o) {
  Term l = t.left();
  switch (l.kind()) {
    case TermKind::Deadlock:
      if (o.rule_enabled(RuleId::DL2)) return Local{RuleId::DL2, Term::deadlock()};
      return std::nullopt;
    case TermKind::Alt: {
      if (!o.rule_enabled(RuleId::A4)) return std::nullopt;
      auto [x, y] = split_sum(l);
      return Local{RuleId::A4,
                   Term::alt(Term::seq(x, t.right()), Term::seq(y, t.right()))};
    }
    case TermKind::Seq:
      if (o.rule_enabled(RuleId::A5))
        return Local{RuleId::A5,
                     Term::seq(l.left(), Term::seq(l.right(), t.right()))};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// Initial action of an action-prefix shape: `a` itself or `a . y`.
std::optional<ActionLabel> prefix_action(const Term& t) {
  if (t.is_action()) return t.label();
  if (t.kind() == TermKind::Seq && t.left().is_action()) return t.left().label();
  return std::nullopt;
}

std::optional<Local> try_play_rules(const Term& t, const RewriteOptions& o) {
  Term l = t.left();
  Term r = t.right();
  auto on = [&](RuleId rule) { return o.rule_enabled(rule); };

  if (l.is_deadlock() && on(RuleId::PO3)) return Local{RuleId::PO3, Term::deadlock()};
  if (r.is_deadlock() && on(RuleId::PO4)) return Local{RuleId::PO4, Term::deadlock()};
  if (l.kind() == TermKind::OppAlt && on(RuleId::PO11))
    return Local{RuleId::PO11, Term::play(Term::alt(l.left(), l.right()), r)};
  if (r.kind() == TermKind::OppAlt && on(RuleId::PO12))
    return Local{RuleId::PO12, Term::play(l, Term::alt(r.left(), r.right()))};
  if (l.kind() == TermKind::Alt && on(RuleId::PO13)) {
    auto [x, y] = split_sum(l);
    return Local{RuleId::PO13, Term::alt(Term::play(x, r), Term::play(y, r))};
  }
  if (r.kind() == TermKind::Alt && on(RuleId::PO14)) {
    auto [x, y] = split_sum(r);
    return Local{RuleId::PO14, Term::alt(Term::play(l, x), Term::play(l, y))};
  }

  auto la = prefix_action(l);
  auto ra = prefix_action(r);
  if (!la || !ra) return std::nullopt;
  bool same = *la == *ra;
  if (l.is_action() && r.is_action()) {
    if (same && on(RuleId::PO1)) return Local{RuleId::PO1, l};
    if (!same && on(RuleId::PO2)) return Local{RuleId::PO2, Term::deadlock()};
    return std::nullopt;
  }
  if (l.is_action()) {
    if (same && on(RuleId::PO5)) return Local{RuleId::PO5, r};
    if (!same && on(RuleId::PO6)) return Local{RuleId::PO6, Term::deadlock()};
    return std::nullopt;
  }
  if (r.is_action()) {
    if (same && on(RuleId::PO7)) return Local{RuleId::PO7, l};
    if (!same && on(RuleId::PO8)) return Local{RuleId::PO8, Term::deadlock()};
    return std::nullopt;
  }
  if (same && on(RuleId::PO9))
    return Local{RuleId::PO9,
                 Term::seq(l.left(), Term::play(l.right(), r.right()))};
  if (!same && on(RuleId::PO10)) return Local{RuleId::PO10, Term::deadlock()};
  return std::nullopt;
}

std::optional<Local> try_root(const Term& t, const RewriteOptions& o) {
  switch (t.kind()) {
    case TermKind::Deadlock:
    case TermKind::Action:
      return std::nullopt;
    case TermKind::Alt:
      return try_alt_rules(t, o);
    case TermKind::Seq:
      return try_seq_rules(t, o);
    case TermKind::OppAlt:
      if (o.rule_enabled(RuleId::OA1))
        return Local{RuleId::OA1, Term::alt(t.left(), t.right())};
      return std::nullopt;
    case TermKind::Play:
      return try_play_rules(t, o);
  }
  return std::nullopt;
}

// Returns the rewritten copy of `t` with the step's rule, filling `path`
// relative to `t`.
std::optional<Local> step_rec(const Term& t, const RewriteOptions& o,
                              std::vector<int>& path) {
  bool outermost = o.strategy == RewriteStrategy::LeftmostOutermost;
  if (outermost) {
    if (auto root = try_root(t, o)) return root;
  }
  if (t.is_binary()) {
    path.push_back(0);
    if (auto hit = step_rec(t.left(), o, path))
      return Local{hit->rule, Term::make(t.kind(), hit->replacement, t.right())};
    path.pop_back();
    path.push_back(1);
    if (auto hit = step_rec(t.right(), o, path))
      return Local{hit->rule, Term::make(t.kind(), t.left(), hit->replacement)};
    path.pop_back();
  }
  if (!outermost) {
    if (auto root = try_root(t, o)) return root;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RewriteStep> rewrite_step(const Term& t, const RewriteOptions& o) {
  std::vector<int> path;
  auto hit = step_rec(t, o, path);
  if (!hit) return std::nullopt;
  return RewriteStep{hit->rule, std::move(path), t, hit->replacement};
}

RewriteTrace normalize(const Term& t, const RewriteOptions& o) {
  RewriteTrace trace{t, t, {}};
  Term cur = t;
  while (auto step = rewrite_step(cur, o)) {
    if (trace.steps.size() >= o.step_cap) throw StepLimitError(o.step_cap);
    cur = step->after;
    trace.steps.push_back(std::move(*step));
  }
  trace.final = cur;
  return trace;
}

Term normal_form(const Term& t, const RewriteOptions& o) {
  Term cur = t;
  std::size_t steps = 0;
  while (auto step = rewrite_step(cur, o)) {
    if (++steps > o.step_cap) throw StepLimitError(o.step_cap);
    cur = step->after;
  }
  return cur;
}

bool is_basic_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Deadlock:
    case TermKind::Action:
      return true;
    case TermKind::Seq:
    case TermKind::Alt:
      return is_basic_term(t.left()) && is_basic_term(t.right());
    default:
      return false;
  }
}

nlohmann::json trace_to_json(const RewriteTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"rule", rule_name(step.rule)},
                     {"position", step.position},
                     {"before", print_term(step.before)},
                     {"after", print_term(step.after)}});
  }
  return {{"initial", print_term(trace.initial)},
          {"final", print_term(trace.final)},
          {"steps", std::move(steps)}};
}

}  // namespace gamebpa
