#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "survey/covers.hpp"
#include "survey/solver.hpp"

using namespace survey;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::FromDimacs(l));
  return c;
}

const Formula kTriangle(3, {cl({1, -2, -3}), cl({-1, 2, -3}), cl({-1, -2, 3})});
const Formula kFour(3, {cl({1, 2, -3}), cl({-1, 2}), cl({-2, 3}), cl({1, -3})});

std::set<std::string> strings(const std::vector<CoverRecord>& v) {
  std::set<std::string> out;
  for (const auto& r : v) out.insert(r.assignment.str());
  return out;
}

Formula small(std::uint64_t seed) {
  const std::size_t n = 4 + seed % 6;
  const double alpha = 1.0 + 5.0 * static_cast<double>(seed % 11) / 10.0;
  return generate_random_3sat(n, static_cast<std::size_t>(alpha * n + 0.5), seed);
}

}  // namespace

TEST(GeneralizedAssignment, ParseAndPrint) {
  const auto g = GeneralizedAssignment::Parse("1 * 0");
  EXPECT_EQ(g.str(), "1*0");
  EXPECT_EQ(g.star_count(), 1u);
  EXPECT_FALSE(g.is_trivial());
  EXPECT_TRUE(GeneralizedAssignment::Trivial(4).is_trivial());
  EXPECT_THROW(GeneralizedAssignment::Parse("10x"), std::invalid_argument);
  EXPECT_EQ(GeneralizedAssignment(Assignment{1, 0}).str(), "10");
}

TEST(Covers, TriangleExample) {
  EXPECT_EQ(strings(enumerate_covers_bruteforce(kTriangle)), (std::set<std::string>{"***", "111"}));
  EXPECT_EQ(strings(enumerate_covers_sat(kTriangle).covers), (std::set<std::string>{"***", "111"}));
  EXPECT_FALSE(is_cover(kTriangle, GeneralizedAssignment::Parse("100")));
  // 000 satisfies the formula but supports nothing.
  EXPECT_TRUE(evaluate(kTriangle, {0, 0, 0}));
  EXPECT_FALSE(is_cover(kTriangle, GeneralizedAssignment::Parse("000")));
}

TEST(Covers, FourClauseExample) {
  const auto covers = enumerate_covers_bruteforce(kFour);
  EXPECT_EQ(strings(covers), (std::set<std::string>{"***", "000", "111"}));
  for (const auto& r : covers)
    EXPECT_EQ(r.kind, r.assignment.is_trivial() ? CoverKind::kTrivial : CoverKind::kTrue);
}

TEST(Covers, SupportRequiresValue) {
  const auto s = GeneralizedAssignment::Parse("1*1");
  EXPECT_THROW(is_supported(kTriangle, s, 1), std::invalid_argument);
  EXPECT_FALSE(is_supported(kTriangle, s, 0));
  EXPECT_TRUE(is_supported(kTriangle, GeneralizedAssignment::Parse("111"), 2));
}

TEST(Covers, ClauseConditionNeedsTwoStars) {
  EXPECT_FALSE(satisfies_clause_condition(kTriangle, GeneralizedAssignment::Parse("1*0")));
  EXPECT_FALSE(satisfies_clause_condition(kTriangle, GeneralizedAssignment::Parse("*11")));
  EXPECT_TRUE(satisfies_clause_condition(kTriangle, GeneralizedAssignment::Parse("***")));
  EXPECT_TRUE(satisfies_clause_condition(kTriangle, GeneralizedAssignment::Parse("0**")));
}

TEST(Covers, BruteForceMatchesDefinition) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Formula f = small(seed);
    EXPECT_EQ(strings(enumerate_covers_bruteforce(f)), oracle::all_covers(f)) << seed;
  }
  EXPECT_THROW(enumerate_covers_bruteforce(generate_random_3sat(20, 10, 0)), std::invalid_argument);
}

TEST(Covers, SatEnginesMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Formula f = small(seed);
    const auto brute = enumerate_covers_bruteforce(f);
    for (SatEngine e : {SatEngine::kCdcl, SatEngine::kDpll}) {
      const auto sat = enumerate_covers_sat(f, std::numeric_limits<std::size_t>::max(), kUnlimited, e);
      EXPECT_TRUE(sat.complete);
      ASSERT_EQ(sat.covers.size(), brute.size()) << seed;
      for (std::size_t i = 0; i < brute.size(); ++i) {
        EXPECT_EQ(sat.covers[i].assignment, brute[i].assignment);
        EXPECT_EQ(sat.covers[i].kind, brute[i].kind);
      }
    }
  }
}

TEST(Covers, ClassificationAgreesWithModels) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Formula f = small(seed);
    const auto models = oracle::all_models(f);
    for (const auto& r : enumerate_covers_bruteforce(f)) {
      if (r.kind == CoverKind::kTrivial) continue;
      bool extends = false;
      for (const auto& m : models) {
        bool ok = true;
        for (std::size_t x = 0; x < m.size(); ++x)
          if (r.assignment[x] != Tri::kStar && static_cast<std::uint8_t>(r.assignment[x]) != m[x])
            ok = false;
        extends |= ok;
      }
      EXPECT_EQ(r.kind, extends ? CoverKind::kTrue : CoverKind::kFalse);
      if (r.witness) EXPECT_TRUE(oracle::satisfies(f, *r.witness));
    }
  }
}

TEST(Covers, LimitMarksIncomplete) {
  const auto e = enumerate_covers_sat(kTriangle, 1);
  EXPECT_EQ(e.covers.size(), 1u);
  EXPECT_FALSE(e.complete);
}

TEST(Encoding, DecodeEncodeBijection) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Formula f = small(seed);
    const CoverEncoding enc = encode_covers_as_cnf(f);
    EXPECT_EQ(enc.g.num_vars(), 2 * f.num_vars() + f.num_literals());
    const auto models = enumerate_models(enc.g);
    const auto covers = oracle::all_covers(f);
    std::set<std::string> decoded;
    for (const auto& m : models.models) {
      const auto s = enc.decode(m);
      EXPECT_EQ(enc.encode(f, s), m);
      decoded.insert(s.str());
    }
    EXPECT_EQ(models.models.size(), covers.size()) << seed;
    EXPECT_EQ(decoded, covers);
  }
}

TEST(Peeling, FromSolutionsGivesTrueCovers) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Formula f = small(seed);
    const auto covers = oracle::all_covers(f);
    for (const auto& m : oracle::all_models(f)) {
      for (PeelOrder order : {PeelOrder::kLowestIndex, PeelOrder::kRandom, PeelOrder::kQueue}) {
        const PeelResult r = star_propagate(f, GeneralizedAssignment(m), order, seed);
        EXPECT_TRUE(covers.count(r.cover.str())) << r.cover.str();
        const auto rec = make_record(f, r.cover);
        EXPECT_NE(rec.kind, CoverKind::kFalse);
        ASSERT_FALSE(r.trace.empty());
        for (std::size_t i = 1; i < r.trace.size(); ++i)
          EXPECT_EQ(r.trace[i].stars, r.trace[i - 1].stars + 1);
        EXPECT_EQ(r.trace.back().unsupported, 0u);
        EXPECT_EQ(r.trace.back().stars, r.cover.star_count());
      }
    }
  }
}

TEST(Peeling, RejectsClauseViolations) {
  EXPECT_THROW(star_propagate(kTriangle, GeneralizedAssignment::Parse("0*1")), std::invalid_argument);
  EXPECT_EQ(parse_peel_order("queue"), PeelOrder::kQueue);
  EXPECT_THROW(parse_peel_order("sideways"), std::invalid_argument);
}

TEST(Covers, TreesHaveOnlyTrivialCover) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Formula f = generate_random_tree(2 + seed % 11, seed);
    const auto covers = enumerate_covers_bruteforce(f);
    ASSERT_EQ(covers.size(), 1u) << seed;
    EXPECT_TRUE(covers[0].assignment.is_trivial());
  }
}

TEST(Covers, TextRoundTrip) {
  const auto covers = enumerate_covers_bruteforce(kFour);
  std::stringstream ss;
  write_covers(ss, covers);
  const auto back = read_covers(ss);
  ASSERT_EQ(back.size(), covers.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].first, covers[i].assignment);
    EXPECT_EQ(back[i].second, covers[i].kind);
  }
}
