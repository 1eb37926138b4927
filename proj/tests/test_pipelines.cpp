#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "survey/pipelines.hpp"

using namespace survey;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::FromDimacs(l));
  return c;
}

const Formula kTriangle(3, {cl({1, -2, -3}), cl({-1, 2, -3}), cl({-1, -2, 3})});
const Formula kFour(3, {cl({1, 2, -3}), cl({-1, 2}), cl({-2, 3}), cl({1, -3})});

}  // namespace

TEST(Decimation, ContradictionOnConflictingUnits) {
  const DecimationOutcome d = decimate(Formula(1, {cl({1}), cl({-1})}), DecimationConfig{});
  EXPECT_EQ(d.status, DecimationStatus::kContradiction);
  EXPECT_FALSE(d.assignment);
}

TEST(Decimation, SolvesAndVerifies) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Formula f = generate_random_3sat(1500, 6000, seed);
    DecimationConfig c;
    c.seed = seed;
    c.fix_fraction = 0.04;
    const DecimationOutcome d = decimate(f, c);
    ASSERT_EQ(d.status, DecimationStatus::kSolved) << seed;
    EXPECT_TRUE(oracle::satisfies(f, *d.assignment));
    ASSERT_FALSE(d.log.empty());
    for (std::size_t i = 1; i < d.log.size(); ++i)
      EXPECT_LT(d.log[i].n_remaining, d.log[i - 1].n_remaining);
  }
}

TEST(Decimation, TreeGoesStraightToLocalSearch) {
  const Formula f = generate_random_tree(300, 4);
  const DecimationOutcome d = decimate(f, DecimationConfig{});
  ASSERT_EQ(d.status, DecimationStatus::kSolved);
  EXPECT_TRUE(oracle::satisfies(f, *d.assignment));
  ASSERT_EQ(d.log.size(), 1u);
  EXPECT_EQ(d.log[0].n_fixed, 0u);
}

TEST(Decimation, LogCsvAndValidation) {
  const DecimationOutcome d = decimate(generate_random_tree(40, 1), DecimationConfig{});
  std::ostringstream out;
  write_decimation_log_csv(out, d);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "round,n_remaining,sp_iters,max_abs_m,n_fixed,status");
  DecimationConfig bad;
  bad.fix_fraction = 0.0;
  EXPECT_THROW(decimate(kTriangle, bad), std::invalid_argument);
  DecimationConfig bad_retry;
  bad_retry.sp_retry_damping = {0.5, 1.0};
  EXPECT_THROW(decimate(kTriangle, bad_retry), std::invalid_argument);
}

TEST(Decimation, UnconvergedSurveyFallsBackToWalksat) {
  DecimationConfig c;
  c.sp.max_iters = 1;
  c.sp_retry_damping.clear();
  const Formula f = generate_random_3sat(200, 600, 3);
  const DecimationOutcome d = decimate(f, c);
  ASSERT_EQ(d.status, DecimationStatus::kSolved);
  EXPECT_TRUE(evaluate(f, *d.assignment));
  ASSERT_EQ(d.log.size(), 1u);
  EXPECT_EQ(d.log[0].n_fixed, 0u);
}

TEST(Decimation, RoundLimitStops) {
  DecimationConfig c;
  c.max_rounds = 1;
  c.fix_fraction = 0.001;
  const DecimationOutcome d = decimate(generate_random_3sat(2000, 8400, 1), c);
  EXPECT_EQ(d.status, DecimationStatus::kBudget);
}

TEST(Estimators, ExactSolutionMarginals) {
  const MarginalTable t = exact_solution_marginals(Formula(2, {cl({1, 2})}));
  EXPECT_DOUBLE_EQ(t.vars[0].p_plus, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.vars[1].p_minus, 1.0 / 3.0);
  EXPECT_EQ(t.semantics, Semantics::kSolution);
  EXPECT_THROW(exact_solution_marginals(Formula(1, {cl({1}), cl({-1})})), std::domain_error);
  EXPECT_FALSE(exact_solution_marginals(Formula(3, {}), 4).complete);
}

TEST(Estimators, ExactSolutionMarginalsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Formula f = generate_random_3sat(10, 30, seed);
    if (oracle::all_models(f).empty()) continue;
    const auto p = oracle::positive_fraction(f);
    const auto t = exact_solution_marginals(f);
    for (std::size_t x = 0; x < p.size(); ++x) {
      EXPECT_NEAR(t.vars[x].p_plus, p[x], 1e-12);
      EXPECT_NEAR(t.vars[x].p_plus + t.vars[x].p_minus, 1.0, 1e-12);
    }
  }
}

TEST(Estimators, ExactCoverMarginals) {
  const auto tri = exact_cover_marginals(kTriangle);
  for (const auto& v : tri.vars) {
    EXPECT_DOUBLE_EQ(v.p_plus, 0.5);
    EXPECT_DOUBLE_EQ(v.p_minus, 0.0);
    EXPECT_DOUBLE_EQ(v.p_star, 0.5);
  }
  const auto four = exact_cover_marginals(kFour, CoverMethod::kBruteForce);
  for (const auto& v : four.vars) {
    EXPECT_DOUBLE_EQ(v.p_plus, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(v.p_minus, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(v.magnetization(), 0.0);
  }
  EXPECT_EQ(four.semantics, Semantics::kCover);
}

TEST(Estimators, CoverMethodsAgree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Formula f = generate_random_3sat(9, 9 * (1 + seed % 4), seed);
    const auto a = exact_cover_marginals(f, CoverMethod::kBruteForce);
    const auto b = exact_cover_marginals(f, CoverMethod::kSat);
    for (std::size_t x = 0; x < 9; ++x) {
      EXPECT_DOUBLE_EQ(a.vars[x].p_plus, b.vars[x].p_plus);
      EXPECT_DOUBLE_EQ(a.vars[x].p_star, b.vars[x].p_star);
    }
  }
}

TEST(Estimators, PeeledMarginalsFromAllSolutions) {
  const auto models = oracle::all_models(kFour);
  const auto t = peeled_cover_marginals(kFour, std::span<const Assignment>(models));
  // 000 and 111 are both covers already, so peeling leaves them unchanged.
  for (const auto& v : t.vars) {
    EXPECT_DOUBLE_EQ(v.p_plus, 0.5);
    EXPECT_DOUBLE_EQ(v.p_minus, 0.5);
  }
  const auto tri = peeled_cover_marginals(kTriangle, oracle::all_models(kTriangle));
  const auto again = peeled_cover_marginals(kTriangle, oracle::all_models(kTriangle));
  for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(tri.vars[x].p_plus, again.vars[x].p_plus);
}

TEST(Estimators, SampledMarginals) {
  const Formula f = generate_random_3sat(100, 300, 6);
  const auto s = sampled_solution_marginals(f, 30, 2);
  EXPECT_EQ(s.samples, 30u);
  EXPECT_LE(s.distinct, 30u);
  const auto p = peeled_cover_marginals(f, 30, 2);
  EXPECT_EQ(p.samples, 30u);
  for (const auto& v : p.table.vars) EXPECT_NEAR(v.p_plus + v.p_minus + v.p_star, 1.0, 1e-12);
  EXPECT_THROW(peeled_cover_marginals(Formula(1, {cl({1}), cl({-1})}), 2, 0,
                                      PeelOrder::kLowestIndex, WalkSatConfig{1000, 0.5, 0, 0}),
               std::runtime_error);
}
