#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fairaudit/version.hpp"
#include "support/version_oracle.hpp"

using namespace fairaudit;

namespace {

Version v(const std::string& s) {
  auto parsed = parse_version(s);
  REQUIRE_MESSAGE(parsed.has_value(), "expected parseable version: ", s);
  return *parsed;
}

int cmp(const std::string& a, const std::string& b) { return compare_versions(v(a), v(b)); }

/// The version grid shared by the oracle cross-check; mixes lengths,
/// zero-padding cases, leading v, and all pre-release phases.
const std::vector<std::string>& version_grid() {
  static const std::vector<std::string> grid = {
      "0",       "0.1",     "0.9.9",  "1",        "1.0",     "1.0.0",  "1.0.1",
      "1.1",     "1.2",     "1.2.3",  "1.2.10",   "1.10",    "2",      "2.0a1",
      "2.0a2",   "2.0b1",   "2.0rc1", "2.0rc2",   "2.0",     "2.0.1",  "2.2",
      "2.2.0",   "2.2.1",   "2.3",    "3.0.0rc1", "3.0.0",   "10.0",   "v1.2.3",
      "1.2.3a4", "0.0.0",
  };
  return grid;
}

const std::vector<std::string>& constraint_grid() {
  static const std::vector<std::string> grid = {
      "0.1", "1.0", "1.0.0", "1.2", "1.2.3", "2.0", "2.0rc1", "2.2", "2.2.0", "3.0.0", "1.2.10",
  };
  return grid;
}

const std::vector<std::pair<std::string, ConstraintOp>>& all_ops() {
  static const std::vector<std::pair<std::string, ConstraintOp>> ops = {
      {"==", ConstraintOp::eq}, {"!=", ConstraintOp::ne}, {"<=", ConstraintOp::le},
      {">=", ConstraintOp::ge}, {"<", ConstraintOp::lt},  {">", ConstraintOp::gt},
      {"~=", ConstraintOp::compatible},
  };
  return ops;
}

}  // namespace

TEST_CASE("Version: accepted grammar") {
  CHECK(v("1.2.3").release == std::vector<int>{1, 2, 3});
  CHECK(v("v1.2.3").release == std::vector<int>{1, 2, 3});
  CHECK_FALSE(v("1.2.3").pre.has_value());

  auto rc = v("2.0rc1");
  REQUIRE(rc.pre.has_value());
  CHECK(rc.pre->phase == PrePhase::rc);
  CHECK(rc.pre->number == 1);

  auto alpha = v("1.0a12");
  REQUIRE(alpha.pre.has_value());
  CHECK(alpha.pre->phase == PrePhase::alpha);
  CHECK(alpha.pre->number == 12);

  auto beta = v("0.5b3");
  REQUIRE(beta.pre.has_value());
  CHECK(beta.pre->phase == PrePhase::beta);
}

TEST_CASE("Version: rejected grammar") {
  for (const std::string bad :
       {"", "v", "1.", ".1", "1..2", "1.2.3.post1", "1.2.3.dev0", "1!2.0", "1.2.3+local",
        "1.2.*", "abc", "1.2a", "1.2rc", "1.2.3-4", "1 . 2", "1_2", "0x1"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_version(bad).has_value());
  }
}

TEST_CASE("Version: surrounding whitespace is tolerated, interior is not") {
  // Constraint splitting hands us tokens like " 1.2.3"; padding is harmless.
  CHECK(cmp(" 1.2.3", "1.2.3") == 0);
  CHECK(cmp("1.2.3 ", "1.2.3") == 0);
  CHECK(cmp("\t2.0rc1 ", "2.0rc1") == 0);
  CHECK_FALSE(parse_version("1. 2.3").has_value());
  CHECK_FALSE(parse_version("1.2 .3").has_value());
}

TEST_CASE("Version: zero padding makes trailing zeros meaningless") {
  CHECK(cmp("1.0", "1.0.0") == 0);
  CHECK(cmp("1", "1.0.0") == 0);
  CHECK(cmp("1.0.1", "1.0") > 0);
  CHECK(cmp("1.0", "1.0.1") < 0);
}

TEST_CASE("Version: numeric, not lexicographic, segment comparison") {
  CHECK(cmp("1.2.10", "1.2.3") > 0);
  CHECK(cmp("1.10", "1.9") > 0);
  CHECK(cmp("10.0", "9.9") > 0);
}

TEST_CASE("Version: pre-releases order before the final release") {
  CHECK(cmp("2.0a1", "2.0") < 0);
  CHECK(cmp("2.0b1", "2.0") < 0);
  CHECK(cmp("2.0rc1", "2.0") < 0);
  CHECK(cmp("2.0a1", "2.0b1") < 0);
  CHECK(cmp("2.0b1", "2.0rc1") < 0);
  CHECK(cmp("2.0rc1", "2.0rc2") < 0);
  CHECK(cmp("2.0rc1", "2.0.1") < 0);
  CHECK(cmp("2.0", "2.0rc9") > 0);
}

TEST_CASE("Version: constraint parsing") {
  auto list = parse_constraint_list(">=1.2, <2.0");
  REQUIRE(list.has_value());
  REQUIRE(list->size() == 2);
  CHECK((*list)[0].op == ConstraintOp::ge);
  CHECK((*list)[1].op == ConstraintOp::lt);

  auto compat = parse_constraint_list("~=1.4.2");
  REQUIRE(compat.has_value());
  CHECK((*compat)[0].op == ConstraintOp::compatible);

  auto any = parse_constraint_list("");
  REQUIRE(any.has_value());
  CHECK(any->empty());

  SUBCASE("rejections") {
    CHECK_FALSE(parse_constraint_list("===1.0").has_value());
    CHECK_FALSE(parse_constraint_list("~=1").has_value());  // needs two segments
    CHECK_FALSE(parse_constraint_list(">=1.2, nonsense").has_value());
    CHECK_FALSE(parse_constraint_list("=1.2").has_value());
    CHECK_FALSE(parse_constraint_list(">=1.2.*").has_value());
  }
}

TEST_CASE("Version: compatible-release operator") {
  auto holds = [](const std::string& version, const std::string& constraint) {
    auto cs = parse_constraint_list("~=" + constraint);
    REQUIRE(cs.has_value());
    return satisfies_all(v(version), *cs);
  };
  CHECK(holds("1.4.5", "1.4.2"));
  CHECK(holds("1.4.2", "1.4.2"));
  CHECK_FALSE(holds("1.5.0", "1.4.2"));
  CHECK_FALSE(holds("1.4.1", "1.4.2"));
  CHECK(holds("1.9", "1.4"));   // ~=1.4 allows any 1.x >= 1.4
  CHECK_FALSE(holds("2.0", "1.4"));
  CHECK(holds("2.2.1", "2.2"));
}

TEST_CASE("Version: oracle equivalence over the full grid") {
  const auto& versions = version_grid();
  const auto& constraints = constraint_grid();
  const auto& ops = all_ops();
  REQUIRE(versions.size() >= 20);
  REQUIRE(constraints.size() >= 10);
  REQUIRE(ops.size() == 7);

  int cases = 0;
  for (const auto& vs : versions) {
    for (const auto& [op_text, op] : ops) {
      for (const auto& cs : constraints) {
        ++cases;
        CAPTURE(vs);
        CAPTURE(op_text);
        CAPTURE(cs);
        auto expected = testsupport::oracle_satisfies(vs, op_text, cs);
        VersionConstraint constraint{op, v(cs)};
        if (!expected.has_value()) {
          CHECK_FALSE(constraint_valid(constraint));
          continue;
        }
        REQUIRE(constraint_valid(constraint));
        CHECK(satisfies(v(vs), constraint) == *expected);
      }
    }
  }
  CHECK(cases >= 1400);
}

TEST_CASE("Version: oracle agrees on pairwise comparison too") {
  const auto& versions = version_grid();
  for (const auto& a : versions) {
    for (const auto& b : versions) {
      CAPTURE(a);
      CAPTURE(b);
      auto oa = testsupport::oracle_parse(a);
      auto ob = testsupport::oracle_parse(b);
      REQUIRE(oa.has_value());
      REQUIRE(ob.has_value());
      const int expected = testsupport::oracle_compare(*oa, *ob);
      const int got = cmp(a, b);
      CHECK((got < 0) == (expected < 0));
      CHECK((got == 0) == (expected == 0));
      CHECK((got > 0) == (expected > 0));
    }
  }
}

TEST_CASE("Version: render round trip") {
  for (const std::string spec_text : {">=1.2,<2.0", "~=1.4.2", "==1.0", "!=2.0rc1"}) {
    auto cs = parse_constraint_list(spec_text);
    REQUIRE(cs.has_value());
    auto again = parse_constraint_list(render(*cs));
    REQUIRE(again.has_value());
    REQUIRE(again->size() == cs->size());
    for (std::size_t i = 0; i < cs->size(); ++i) {
      CHECK((*again)[i].op == (*cs)[i].op);
      CHECK(compare_versions((*again)[i].version, (*cs)[i].version) == 0);
    }
  }
}
