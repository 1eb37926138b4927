#include <gtest/gtest.h>

#include <sstream>

#include "survey/dimacs.hpp"

using namespace survey;

TEST(Dimacs, ParsesCommentsAndMultilineClauses) {
  const auto r = parse_dimacs(
      "c a comment\n"
      "p cnf 3 2\n"
      "1 -2\n"
      "  3 0 -1 2 0\n");
  EXPECT_TRUE(r.warnings.empty());
  ASSERT_EQ(r.formula.num_clauses(), 2u);
  EXPECT_EQ(r.formula.clause(0).size(), 3u);
  EXPECT_EQ(r.formula.clause(1)[0].dimacs(), -1);
}

TEST(Dimacs, PercentTerminatesInput) {
  const auto r = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n");
  EXPECT_EQ(r.formula.num_clauses(), 1u);
}

TEST(Dimacs, ClauseCountMismatchWarns) {
  const auto r = parse_dimacs("p cnf 2 3\n1 2 0\n");
  EXPECT_EQ(r.formula.num_clauses(), 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Dimacs, RepeatedLiteralDroppedTautologyKept) {
  const auto r = parse_dimacs("p cnf 2 2\n1 1 2 0\n1 -1 0\n");
  EXPECT_EQ(r.formula.clause(0).size(), 2u);
  EXPECT_EQ(r.formula.clause(1).size(), 2u);
  EXPECT_EQ(r.warnings.size(), 2u);
}

TEST(Dimacs, Errors) {
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf x 1\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 foo 0\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 2\n1 0\n\n2 -1\n");
    FAIL() << "unterminated clause accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Dimacs, RoundTrip) {
  const Formula f = generate_random_3sat(30, 120, 4);
  const std::string text = render_dimacs(f);
  const auto back = parse_dimacs(text);
  EXPECT_EQ(back.formula, f);
  EXPECT_EQ(render_dimacs(back.formula), text);
}

TEST(Dimacs, ParseModel) {
  EXPECT_EQ(parse_model("v 1 -2\nv 3 0\n", 4), (Assignment{1, 0, 1, 0}));
  EXPECT_EQ(parse_model("-1 2", 2), (Assignment{0, 1}));
  EXPECT_THROW(parse_model("5", 2), ParseError);
}

TEST(Dimacs, RenumberingCsv) {
  const Formula f(3, {Clause{Literal(1, true)}, Clause{Literal(2, true), Literal(3, false)}});
  const auto s = simplify(f, PartialAssignment(3));
  ASSERT_TRUE(s);
  std::ostringstream out;
  write_renumbering_csv(out, *s);
  EXPECT_EQ(out.str(), "old_index,new_index\n2,1\n3,2\n");
}
