#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamebpa/rewrite.hpp"
#include "gamebpa/selftest.hpp"
#include "support.hpp"

#include <nlohmann/json.hpp>

using namespace gamebpa;
using testsupport::T;

namespace {

// Expect a single specific rule at the root of the first step.
void expect_step(const std::string& src, RuleId rule, const std::string& after) {
  auto step = rewrite_step(T(src));
  REQUIRE(step.has_value());
  CHECK(step->rule == rule);
  CHECK(structural_equal(step->after, T(after)));
}

Term resolve(const Term& root, const std::vector<int>& path) {
  Term cur = root;
  for (int idx : path) cur = idx == 0 ? cur.left() : cur.right();
  return cur;
}

}  // namespace

TEST_CASE("single rule applications") {
  expect_step("a + a", RuleId::A3, "a");
  expect_step("(a + b) . c", RuleId::A4, "a . c + b . c");
  expect_step("(a . b) . c", RuleId::A5, "a . (b . c)");
  expect_step("a $ b", RuleId::OA1, "a + b");
  expect_step("a + delta", RuleId::DL1, "a");
  expect_step("delta . a", RuleId::DL2, "delta");
  expect_step("a & a", RuleId::PO1, "a");
  expect_step("a & b", RuleId::PO2, "delta");
  expect_step("delta & a", RuleId::PO3, "delta");
  expect_step("a & delta", RuleId::PO4, "delta");
  expect_step("a & a . b", RuleId::PO5, "a . b");
  expect_step("a & b . c", RuleId::PO6, "delta");
  expect_step("a . b & a", RuleId::PO7, "a . b");
  expect_step("a . b & c", RuleId::PO8, "delta");
  expect_step("a . x & a . y", RuleId::PO9, "a . (x & y)");
  expect_step("a . x & b . y", RuleId::PO10, "delta");
  expect_step("(a $ b) & c", RuleId::PO11, "(a + b) & c");
  expect_step("c & (a $ b)", RuleId::PO12, "c & (a + b)");
  expect_step("(a + b) & c", RuleId::PO13, "(a & c) + (b & c)");
  expect_step("c & (a + b)", RuleId::PO14, "(c & a) + (c & b)");
}

TEST_CASE("distributive splits isolate the canonically smallest summand") {
  // summands {submit . store, cancel}: the plain action sorts first
  auto step = rewrite_step(T("(submit . store + cancel) & x"));
  REQUIRE(step.has_value());
  CHECK(step->rule == RuleId::PO13);
  CHECK(structural_equal(step->after,
                         T("(cancel & x) + (submit . store & x)")));
}

TEST_CASE("ac matching sees through nested sums") {
  // DL1 must find the deadlock inside a right-nested sum
  auto step = rewrite_step(T("a + (delta + b)"));
  REQUIRE(step.has_value());
  CHECK(step->rule == RuleId::DL1);
  CHECK(ac_equal(step->after, T("a + b")));
  // A3 matches summands that are only AC-equal, not identical
  Term dup_term = Term::alt(T("c . (a + b)"), T("c . (b + a)"));
  auto dup = rewrite_step(dup_term);
  REQUIRE(dup.has_value());
  CHECK(dup->rule == RuleId::A3);
  CHECK(ac_equal(dup->after, T("c . (a + b)")));
}

TEST_CASE("deadlock and plain actions are normal forms") {
  CHECK_FALSE(rewrite_step(T("delta")).has_value());
  CHECK_FALSE(rewrite_step(T("a")).has_value());
  CHECK_FALSE(rewrite_step(T("a . delta")).has_value());  // nothing relates delta right of .
  CHECK_FALSE(rewrite_step(T("a . b + c")).has_value());
}

TEST_CASE("p-view mode keeps the opponent's alternative outside plays") {
  RewriteOptions pview;
  pview.mode = RewriteMode::PView;
  CHECK_FALSE(rewrite_step(T("a $ b"), pview).has_value());
  // but a play still resolves it via PO11/PO12
  auto step = rewrite_step(T("(a $ b) & a"), pview);
  REQUIRE(step.has_value());
  CHECK(step->rule == RuleId::PO11);
  CHECK(structural_equal(normal_form(T("(a $ b) & a"), pview), T("a")));
  // in full mode the same term is rewritten by OA1
  CHECK(structural_equal(normal_form(T("a $ b")), T("a + b")));
}

TEST_CASE("worked deductions reach their published executions") {
  RewriteOptions full;
  SUBCASE("submitting an order") {
    Term play = Term::play(T(testsupport::kSubmittingOrderP),
                           T("start . write . submit . store"));
    CHECK(structural_equal(normal_form(play, full),
                           T("start . write . submit . store")));
  }
  SUBCASE("transaction processing") {
    Term play = Term::play(T(testsupport::kTransactionP),
                           T("start . operate . abort . rollback"));
    CHECK(structural_equal(normal_form(play, full),
                           T("start . operate . abort . rollback")));
  }
  SUBCASE("purchasing") {
    Term play = Term::play(T(testsupport::kPurchasingStrategyP),
                           T(testsupport::kPurchasingStrategyO));
    CHECK(structural_equal(normal_form(play, full),
                           T("start . shopping . sPlane . oPlane . pOffLine")));
  }
  SUBCASE("three player purchasing") {
    Term play = Term::play(Term::play(T(testsupport::kExtendedStrategyP1),
                                      T(testsupport::kExtendedStrategyP2)),
                           T(testsupport::kExtendedStrategyP3));
    CHECK(structural_equal(
        normal_form(play, full),
        T("start . shopping . sPlane . oPlane . pOffLine . ByBank")));
  }
}

TEST_CASE("the p-view trace of the first deduction mirrors the annotated rules") {
  RewriteOptions pview;
  pview.mode = RewriteMode::PView;
  Term play = Term::play(T(testsupport::kSubmittingOrderP),
                         T("start . write . submit . store"));
  RewriteTrace trace = normalize(play, pview);
  std::vector<RuleId> distinct;
  for (const auto& step : trace.steps)
    if (distinct.empty() || distinct.back() != step.rule)
      distinct.push_back(step.rule);
  CHECK(distinct == std::vector<RuleId>{RuleId::PO9, RuleId::PO11, RuleId::PO13,
                                        RuleId::PO6, RuleId::PO9, RuleId::PO1,
                                        RuleId::DL1});
}

TEST_CASE("basic terms") {
  CHECK(is_basic_term(T("a . b + c")));
  CHECK(is_basic_term(T("delta")));
  CHECK_FALSE(is_basic_term(T("a $ b")));
  CHECK_FALSE(is_basic_term(T("a . (b & c)")));
}

TEST_CASE("traces chain, point at real redexes, and end in normal forms") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng);
    RewriteTrace trace = normalize(t);
    CHECK(structural_equal(trace.initial, t));
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
      const auto& step = trace.steps[s];
      if (s + 1 < trace.steps.size())
        CHECK(structural_equal(step.after, trace.steps[s + 1].before));
      CHECK(weight(step.after) < weight(step.before));
      // the position points at the subterm the rule changed
      CHECK_FALSE(structural_equal(resolve(step.before, step.position),
                                   resolve(step.after, step.position)));
    }
    Term final = trace.steps.empty() ? t : trace.steps.back().after;
    CHECK(structural_equal(final, trace.final));
    CHECK(is_basic_term(trace.final));
    CHECK(normalize(trace.final).steps.empty());  // idempotence
  }
}

TEST_CASE("innermost and outermost strategies agree modulo AC") {
  Rng rng(17);
  RewriteOptions inner;
  RewriteOptions outer;
  outer.strategy = RewriteStrategy::LeftmostOutermost;
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng);
    CHECK(ac_equal(normal_form(t, inner), normal_form(t, outer)));
  }
}

TEST_CASE("the step cap raises instead of looping") {
  RewriteOptions tiny;
  tiny.step_cap = 1;
  CHECK_THROWS_AS(normalize(T("(a + a) + (b & b)"), tiny), StepLimitError);
}

TEST_CASE("trace serialization") {
  RewriteTrace trace = normalize(T("a & a"));
  auto j = trace_to_json(trace);
  REQUIRE(j["steps"].size() == 1);
  CHECK(j["steps"][0]["rule"] == "PO1");
  CHECK(j["steps"][0]["before"] == "a & a");
  CHECK(j["steps"][0]["after"] == "a");
  CHECK(j["steps"][0]["position"].is_array());
  CHECK(j["final"] == "a");
}

TEST_CASE("disabled rules are skipped") {
  RewriteOptions opts;
  opts.disabled_rules = rule_bit(RuleId::PO1);
  Term t = T("a & a");
  CHECK_FALSE(rewrite_step(t, opts).has_value());  // PO1 was the only match
}
