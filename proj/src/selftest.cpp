#include "gamebpa/selftest.hpp"

#include "gamebpa/lts.hpp"
#include "gamebpa/parser.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <optional>

namespace gamebpa {

namespace {

using nlohmann::json;

Term random_term_rec(Rng& rng, const TermGenOptions& o, int depth) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (depth <= 0 || coin(rng) < o.leaf_prob) {
    if (coin(rng) < o.deadlock_prob) return Term::deadlock();
    std::uniform_int_distribution<int> pick(0, o.alphabet - 1);
    return Term::action(std::string(1, static_cast<char>('a' + pick(rng))));
  }
  std::uniform_int_distribution<int> pick(0, 9);
  TermKind kind;
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2:
      kind = TermKind::Seq;
      break;
    case 3:
    case 4:
    case 5:
      kind = TermKind::Alt;
      break;
    case 6:
    case 7:
      kind = TermKind::OppAlt;
      break;
    default:
      kind = TermKind::Play;
      break;
  }
  Term l = random_term_rec(rng, o, depth - 1);
  Term r = random_term_rec(rng, o, depth - 1);
  return Term::make(kind, l, r);
}

Term apply_at(const Term& t, std::size_t index,
              const std::function<Term(const Term&)>& f) {
  if (index == 0) return f(t);
  std::size_t left_count = t.left().node_count();
  if (index - 1 < left_count)
    return Term::make(t.kind(), apply_at(t.left(), index - 1, f), t.right());
  return Term::make(t.kind(), t.left(),
                    apply_at(t.right(), index - 1 - left_count, f));
}

bool is_choice(TermKind k) { return k == TermKind::Alt || k == TermKind::OppAlt; }

// One random bisimilarity-preserving edit of the node.
Term edit_node(const Term& x, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 7);
  switch (pick(rng)) {
    case 0:  // commute a choice
      if (is_choice(x.kind())) return Term::make(x.kind(), x.right(), x.left());
      break;
    case 1:  // reassociate a choice spine
      if (is_choice(x.kind()) && x.left().kind() == x.kind())
        return Term::make(x.kind(), x.left().left(),
                          Term::make(x.kind(), x.left().right(), x.right()));
      if (is_choice(x.kind()) && x.right().kind() == x.kind())
        return Term::make(x.kind(), Term::make(x.kind(), x.left(), x.right().left()),
                          x.right().right());
      break;
    case 2:  // duplicate (x + x = x, read right to left)
      return Term::alt(x, x);
    case 3:  // toggle who resolves the choice (x $ y = x + y)
      if (x.kind() == TermKind::Alt) return Term::opp_alt(x.left(), x.right());
      if (x.kind() == TermKind::OppAlt) return Term::alt(x.left(), x.right());
      break;
    case 4:  // drop a deadlock summand
      if (x.kind() == TermKind::Alt && x.right().is_deadlock()) return x.left();
      if (x.kind() == TermKind::Alt && x.left().is_deadlock()) return x.right();
      break;
    case 5:  // drop a duplicate summand
      if (x.kind() == TermKind::Alt && ac_equal(x.left(), x.right()))
        return x.left();
      break;
    case 6:  // an action played against itself
      if (x.is_action()) return Term::play(x, x);
      break;
    default:
      break;
  }
  return Term::alt(x, Term::deadlock());  // always sound (x + delta = x)
}

}  // namespace

Term random_term(Rng& rng, const TermGenOptions& opts) {
  return random_term_rec(rng, opts, opts.max_depth);
}

Term perturb_equivalent(const Term& t, Rng& rng, int edits) {
  Term cur = t;
  for (int i = 0; i < edits; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, cur.node_count() - 1);
    cur = apply_at(cur, pick(rng), [&](const Term& x) { return edit_node(x, rng); });
  }
  return cur;
}

namespace {

std::vector<Role> make_players(int n) {
  if (n == 2) return {Role{"P"}, Role{"O"}};
  std::vector<Role> out;
  for (int i = 1; i <= n; ++i) out.push_back(Role{"P" + std::to_string(i)});
  return out;
}

GameTree random_tree(Rng& rng, const GameGenOptions& o,
                     const std::vector<Role>& players, int depth,
                     std::size_t& label_counter,
                     std::map<ActionLabel, Role>& ownership) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (depth <= 0 || coin(rng) < 0.25) return GameTree{};

  std::uniform_int_distribution<int> ar(1, o.max_branching);
  int arity = ar(rng);
  GameTree node;
  std::size_t owner_index;
  if (o.alternate_owners)
    owner_index = static_cast<std::size_t>(depth) % players.size();
  else
    owner_index = std::uniform_int_distribution<std::size_t>(
        0, players.size() - 1)(rng);
  if (arity >= 2) node.owner = players[owner_index];

  for (int i = 0; i < arity; ++i) {
    ActionLabel label{"m" + std::to_string(label_counter++)};
    ownership.emplace(label, players[owner_index]);
    node.children.emplace_back(
        label, random_tree(rng, o, players, depth - 1, label_counter, ownership));
  }
  return node;
}

}  // namespace

RandomGame random_game(Rng& rng, const GameGenOptions& opts) {
  auto players = make_players(opts.players);
  for (;;) {
    std::size_t label_counter = 0;
    std::map<ActionLabel, Role> ownership;
    GameTree tree =
        random_tree(rng, opts, players, opts.max_depth, label_counter, ownership);
    if (tree.is_leaf()) continue;

    std::size_t combos = 1;
    for (const auto& role : players) combos *= count_strategies(tree, role);
    if (combos > opts.max_combinations) continue;

    RandomGame game;
    game.tree = std::move(tree);
    game.decl.players = players;
    game.decl.ownership = std::move(ownership);
    return game;
  }
}

namespace {

bool contains_deadlock(const Term& t) {
  if (t.is_deadlock()) return true;
  if (t.is_binary())
    return contains_deadlock(t.left()) || contains_deadlock(t.right());
  return false;
}

template <typename Body>
SuiteResult run_suite(std::string name, std::uint64_t salt,
                      const SelftestConfig& cfg, Body&& body) {
  SuiteResult res;
  res.name = std::move(name);
  Rng rng(cfg.seed ^ (salt * 0x9E3779B97F4A7C15ull));
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < cfg.count; ++i) {
    ++res.cases;
    std::optional<json> cx;
    try {
      cx = body(rng, i);
    } catch (const std::exception& e) {
      cx = json{{"error", e.what()}};
    }
    if (cx) {
      ++res.failures;
      if (res.counterexample.empty()) res.counterexample = cx->dump(2);
    }
  }
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

}  // namespace

SuiteResult suite_weight_decrease(const SelftestConfig& cfg) {
  return run_suite(
      "weight-decrease", 1, cfg, [&](Rng& rng, std::size_t) -> std::optional<json> {
        Term t = random_term(rng);
        RewriteTrace trace = normalize(t, cfg.rewrite);
        for (std::size_t s = 0; s < trace.steps.size(); ++s) {
          const auto& step = trace.steps[s];
          Weight before = weight(step.before);
          Weight after = weight(step.after);
          if (after >= before)
            return json{{"term", print_term(t)},
                        {"step", s},
                        {"rule", rule_name(step.rule)},
                        {"before", print_term(step.before)},
                        {"after", print_term(step.after)},
                        {"weight_before", before.str()},
                        {"weight_after", after.str()}};
        }
        return std::nullopt;
      });
}

SuiteResult suite_normal_form_purity(const SelftestConfig& cfg) {
  return run_suite(
      "normal-form-purity", 2, cfg,
      [&](Rng& rng, std::size_t) -> std::optional<json> {
        Term t = random_term(rng);
        RewriteOptions o = cfg.rewrite;
        o.mode = RewriteMode::Full;
        Term nf = normal_form(t, o);
        if (!is_basic_term(nf))
          return json{{"term", print_term(t)},
                      {"normal_form", print_term(nf)},
                      {"reason", "normal form is not a basic term"}};
        if (rewrite_step(nf, o))
          return json{{"term", print_term(t)},
                      {"normal_form", print_term(nf)},
                      {"reason", "normal form is still rewritable"}};
        return std::nullopt;
      });
}

SuiteResult suite_parser_roundtrip(const SelftestConfig& cfg) {
  return run_suite(
      "parser-roundtrip", 3, cfg,
      [&](Rng& rng, std::size_t) -> std::optional<json> {
        Term t = random_term(rng);
        std::string printed = print_term(t);
        Term back = parse_term(printed);
        if (!structural_equal(t, back))
          return json{{"printed", printed}, {"reparsed", print_term(back)}};
        return std::nullopt;
      });
}

SuiteResult suite_soundness(const SelftestConfig& cfg) {
  return run_suite(
      "soundness", 4, cfg, [&](Rng& rng, std::size_t) -> std::optional<json> {
        Term t = random_term(rng);
        RewriteOptions o = cfg.rewrite;
        o.mode = RewriteMode::Full;
        Term nf = normal_form(t, o);
        BisimResult r = bisimilar(t, nf);
        if (!r.equivalent)
          return json{{"term", print_term(t)},
                      {"normal_form", print_term(nf)},
                      {"witness", format_sequence(r.witness)}};
        return std::nullopt;
      });
}

SuiteResult suite_completeness(const SelftestConfig& cfg) {
  return run_suite(
      "completeness", 5, cfg, [&](Rng& rng, std::size_t i) -> std::optional<json> {
        Term t = random_term(rng);
        Term u = (i % 2 == 0) ? perturb_equivalent(t, rng) : random_term(rng);
        RewriteOptions o = cfg.rewrite;
        o.mode = RewriteMode::Full;
        bool semantic = bisimilar(t, u).equivalent;
        bool syntactic = ac_equal(normal_form(t, o), normal_form(u, o));
        if (semantic != syntactic)
          return json{{"left", print_term(t)},
                      {"right", print_term(u)},
                      {"bisimilar", semantic},
                      {"normal_forms_ac_equal", syntactic}};
        return std::nullopt;
      });
}

SuiteResult suite_congruence(const SelftestConfig& cfg) {
  return run_suite(
      "congruence", 6, cfg, [&](Rng& rng, std::size_t) -> std::optional<json> {
        TermGenOptions small;
        small.max_depth = 5;
        Term t = random_term(rng, small);
        Term tp = perturb_equivalent(t, rng);
        Term u = random_term(rng, small);
        Term up = perturb_equivalent(u, rng);
        for (TermKind kind :
             {TermKind::Alt, TermKind::Seq, TermKind::OppAlt, TermKind::Play}) {
          BisimResult r =
              bisimilar(Term::make(kind, t, u), Term::make(kind, tp, up));
          if (!r.equivalent)
            return json{{"operator", kind_name(kind)},
                        {"t", print_term(t)},
                        {"t_equivalent", print_term(tp)},
                        {"u", print_term(u)},
                        {"u_equivalent", print_term(up)},
                        {"witness", format_sequence(r.witness)}};
        }
        return std::nullopt;
      });
}

SuiteResult suite_play_correctness(const SelftestConfig& cfg) {
  return run_suite(
      "play-correctness", 7, cfg, [&](Rng& rng, std::size_t i) -> std::optional<json> {
        GameGenOptions go;
        go.players = (i % 2 == 0) ? 2 : 3;
        go.alternate_owners = (i % 4) >= 2;
        RandomGame game = random_game(rng, go);

        RewriteOptions o = cfg.rewrite;
        o.mode = RewriteMode::Full;

        std::vector<std::vector<Strategy>> per_role;
        for (const auto& role : game.decl.players) {
          per_role.push_back(enumerate_strategies(game.tree, role));
          if (per_role.back().size() != count_strategies(game.tree, role))
            return json{{"reason", "strategy count mismatch"},
                        {"role", role.name},
                        {"enumerated", per_role.back().size()},
                        {"counted", count_strategies(game.tree, role)}};
        }

        std::vector<std::size_t> pick(per_role.size(), 0);
        for (;;) {
          std::vector<Strategy> combo;
          for (std::size_t r = 0; r < per_role.size(); ++r)
            combo.push_back(per_role[r][pick[r]]);

          PlayReport report = verify_play(combo, game.decl, o);
          auto describe = [&](const char* reason) {
            json terms = json::array();
            for (const auto& s : combo) terms.push_back(print_term(strategy_to_term(s)));
            return json{{"reason", reason},
                        {"strategies", std::move(terms)},
                        {"play_normal_form", print_term(report.play_term)},
                        {"maximal_trace", format_sequence(report.maximal_trace)}};
          };
          if (!report.pass) return describe("play differs from maximal common trace");
          if (contains_deadlock(report.play_term))
            return describe("play result contains deadlock");
          if (combo.size() >= 3) {
            // Association of the playing operator must not matter.
            Term right_assoc = Term::play(
                strategy_to_term(combo[0]),
                Term::play(strategy_to_term(combo[1]), strategy_to_term(combo[2])));
            if (!ac_equal(normal_form(right_assoc, o), report.play_term))
              return describe("play result depends on association");
          }

          std::size_t r = per_role.size();
          bool done = true;
          while (r > 0) {
            --r;
            if (++pick[r] < per_role[r].size()) {
              done = false;
              break;
            }
            pick[r] = 0;
          }
          if (done) break;
        }
        return std::nullopt;
      });
}

std::vector<SuiteResult> run_selftest(const SelftestConfig& cfg) {
  return {suite_weight_decrease(cfg),   suite_normal_form_purity(cfg),
          suite_parser_roundtrip(cfg),  suite_soundness(cfg),
          suite_completeness(cfg),      suite_congruence(cfg),
          suite_play_correctness(cfg)};
}

}  // namespace gamebpa
