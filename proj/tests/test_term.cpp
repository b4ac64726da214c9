#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamebpa/selftest.hpp"
#include "gamebpa/term.hpp"
#include "support.hpp"

#include <random>

using namespace gamebpa;
using testsupport::T;

namespace {

// AC-only shuffles (commute/reassociate + spines). Unlike perturb_equivalent
// this never changes the summand multiset, so it must preserve ac_equal.
Term ac_shuffle(const Term& t, Rng& rng, int edits = 4) {
  Term cur = t;
  for (int i = 0; i < edits; ++i) {
    std::vector<Term> alts;
    std::function<void(const Term&)> collect = [&](const Term& x) {
      if (x.kind() == TermKind::Alt) alts.push_back(x);
      if (x.is_binary()) {
        collect(x.left());
        collect(x.right());
      }
    };
    collect(cur);
    if (alts.empty()) return cur;
    // rebuild with one shuffled Alt node, found again by structural identity
    const void* target = alts[rng() % alts.size()].node_id();
    std::function<Term(const Term&)> rebuild = [&](const Term& x) -> Term {
      if (x.node_id() == target) {
        if (rng() % 2 == 0) return Term::alt(x.right(), x.left());
        if (x.left().kind() == TermKind::Alt)
          return Term::alt(x.left().left(), Term::alt(x.left().right(), x.right()));
        if (x.right().kind() == TermKind::Alt)
          return Term::alt(Term::alt(x.left(), x.right().left()), x.right().right());
        return Term::alt(x.right(), x.left());
      }
      if (!x.is_binary()) return x;
      return Term::make(x.kind(), rebuild(x.left()), rebuild(x.right()));
    };
    cur = rebuild(cur);
  }
  return cur;
}

}  // namespace

TEST_CASE("canonical form flattens and sorts sums") {
  CHECK(structural_equal(ac_flatten(T("(a + b) + c")), ac_flatten(T("a + (b + c)"))));
  CHECK(structural_equal(ac_flatten(T("b + a")), ac_flatten(T("a + b"))));
  CHECK(structural_equal(ac_flatten(T("(c + b) + a")), ac_flatten(T("a + (b + c)"))));
  // flattening is not rewriting: a deadlock summand survives
  CHECK(structural_equal(ac_flatten(T("a . (b + delta)")), T("a . (delta + b)")));
}

TEST_CASE("canonical form orders kinds deadlock < action < seq < alt < opp-alt < play") {
  Term sorted = ac_flatten(T("(a & b) + a . b + delta + (a $ b) + c"));
  CHECK(print_term(sorted) == "delta + c + a . b + (a $ b) + (a & b)");
}

TEST_CASE("ac equality") {
  CHECK(ac_equal(T("a + b"), T("b + a")));
  CHECK(ac_equal(T("(a + b) + c"), T("a + (b + c)")));
  CHECK_FALSE(ac_equal(T("a . (b + c)"), T("a . b + a . c")));  // A4 is directed
  CHECK_FALSE(ac_equal(T("a + a"), T("a")));                    // A3 is directed
  CHECK(ac_equal(T("a $ b + c"), T("c + b $ a")));
}

TEST_CASE("ac_flatten is idempotent and ac_equal is an equivalence relation") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    Term t = random_term(rng);
    Term canon = ac_flatten(t);
    CHECK(structural_equal(canon, ac_flatten(canon)));
    CHECK(ac_equal(t, t));

    Term u = ac_shuffle(t, rng);
    Term v = ac_shuffle(u, rng);
    CHECK(ac_equal(t, u));
    CHECK(ac_equal(u, t));
    CHECK(ac_equal(u, v));
    CHECK(ac_equal(t, v));  // transitivity along the shuffle chain
  }
}

TEST_CASE("weights of the basic shapes") {
  CHECK(weight(T("delta")) == 2);
  CHECK(weight(T("a")) == 2);
  CHECK(weight(T("a & b")) == 16);   // (2*2)^2
  CHECK(weight(T("a $ b")) == 5);    // 2+2+1
  CHECK(weight(T("a + b")) == 4);
  CHECK(weight(T("(a . b) . c")) == 128);  // (2^2*2)^2 * 2
  CHECK(weight(T("a . (b . c)")) == 32);   // 2^2 * (2^2*2)
  CHECK(weight(T("(a . b) . c")) > weight(T("a . (b . c)")));
}

TEST_CASE("weight is at least two and invariant under canonicalization") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Term t = random_term(rng);
    CHECK(weight(t) >= 2);
    CHECK(weight(t) == weight(ac_flatten(t)));
  }
}

namespace {

Term rand_atom(Rng& rng) {
  return Term::action(std::string(1, static_cast<char>('a' + rng() % 4)));
}

Term rand_closed(Rng& rng) {
  TermGenOptions o;
  o.max_depth = 4;
  return random_term(rng, o);
}

}  // namespace

// Independent statement of every directed rule as an instance builder; the
// termination measure must drop strictly under any closed substitution.
TEST_CASE("every rewrite rule instance strictly decreases the weight") {
  Rng rng(99);
  auto distinct_actions = [&](Term& a, Term& b) {
    a = rand_atom(rng);
    do { b = rand_atom(rng); } while (b.label() == a.label());
  };
  for (int i = 0; i < 500; ++i) {
    Term x = rand_closed(rng), y = rand_closed(rng), z = rand_closed(rng);
    Term a, b;
    distinct_actions(a, b);
    auto drops = [](const Term& lhs, const Term& rhs) {
      return weight(lhs) > weight(rhs);
    };
    CHECK(drops(Term::alt(x, x), x));                                        // A3
    CHECK(drops(Term::seq(Term::alt(x, y), z),
                Term::alt(Term::seq(x, z), Term::seq(y, z))));               // A4
    CHECK(drops(Term::seq(Term::seq(x, y), z),
                Term::seq(x, Term::seq(y, z))));                             // A5
    CHECK(drops(Term::opp_alt(x, y), Term::alt(x, y)));                      // OA1
    CHECK(drops(Term::alt(x, Term::deadlock()), x));                         // DL1
    CHECK(drops(Term::seq(Term::deadlock(), x), Term::deadlock()));          // DL2
    CHECK(drops(Term::play(a, a), a));                                       // PO1
    CHECK(drops(Term::play(a, b), Term::deadlock()));                        // PO2
    CHECK(drops(Term::play(Term::deadlock(), x), Term::deadlock()));         // PO3
    CHECK(drops(Term::play(x, Term::deadlock()), Term::deadlock()));         // PO4
    CHECK(drops(Term::play(a, Term::seq(a, y)), Term::seq(a, y)));           // PO5
    CHECK(drops(Term::play(a, Term::seq(b, y)), Term::deadlock()));          // PO6
    CHECK(drops(Term::play(Term::seq(a, x), a), Term::seq(a, x)));           // PO7
    CHECK(drops(Term::play(Term::seq(a, x), b), Term::deadlock()));          // PO8
    CHECK(drops(Term::play(Term::seq(a, x), Term::seq(a, y)),
                Term::seq(a, Term::play(x, y))));                            // PO9
    CHECK(drops(Term::play(Term::seq(a, x), Term::seq(b, y)),
                Term::deadlock()));                                          // PO10
    CHECK(drops(Term::play(Term::opp_alt(x, y), z),
                Term::play(Term::alt(x, y), z)));                            // PO11
    CHECK(drops(Term::play(x, Term::opp_alt(y, z)),
                Term::play(x, Term::alt(y, z))));                            // PO12
    CHECK(drops(Term::play(Term::alt(x, y), z),
                Term::alt(Term::play(x, z), Term::play(y, z))));             // PO13
    CHECK(drops(Term::play(x, Term::alt(y, z)),
                Term::alt(Term::play(x, y), Term::play(x, z))));             // PO14
  }
}

TEST_CASE("ownership validation") {
  GameDeclaration decl = parse_game_decl(testsupport::kSubmittingOrderDecl);

  SUBCASE("the submitting-order player view is clean") {
    auto warnings = validate_ownership(T(testsupport::kSubmittingOrderP), decl, Role{"P"});
    CHECK(warnings.empty());
  }

  SUBCASE("viewer-owned opponent choices are flagged per operand") {
    GameDeclaration own;
    own.players = {Role{"P"}, Role{"O"}};
    own.ownership.emplace(ActionLabel{"a"}, Role{"P"});
    own.ownership.emplace(ActionLabel{"b"}, Role{"P"});
    auto warnings = validate_ownership(T("a $ b"), own, Role{"P"});
    CHECK(warnings.size() == 2);
  }

  SUBCASE("missing owners are reported per occurrence") {
    GameDeclaration empty;
    empty.players = {Role{"P"}, Role{"O"}};
    auto warnings = validate_ownership(T("a $ b"), empty, Role{"P"});
    CHECK(warnings.size() == 2);
  }
}

TEST_CASE("labels and roles reject malformed names") {
  CHECK_THROWS_AS(ActionLabel{""}, std::invalid_argument);
  CHECK_THROWS_AS(ActionLabel{"9lives"}, std::invalid_argument);
  CHECK_THROWS_AS(ActionLabel{"has space"}, std::invalid_argument);
  CHECK_NOTHROW(ActionLabel{"pOffLine_2"});
  CHECK_THROWS_AS(Role{"-"}, std::invalid_argument);
}
