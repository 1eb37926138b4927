#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "survey/factor_graph.hpp"
#include "survey/propagation.hpp"

using namespace survey;

namespace {

Clause cl(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.push_back(Literal::FromDimacs(l));
  return c;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(FactorGraph, FourClauseExampleAdjacency) {
  const Formula f(3, {cl({1, 2, -3}), cl({-1, 2}), cl({-2, 3}), cl({1, -3})});
  const FactorGraph g(f);
  EXPECT_EQ(g.num_edges(), 9u);
  const auto cx = g.var_edges(0);
  ASSERT_EQ(cx.size(), 3u);
  EXPECT_EQ(g.edge_clause(cx[0]), 0u);
  EXPECT_FALSE(g.edge_negated(cx[0]));
  EXPECT_EQ(g.edge_clause(cx[1]), 1u);
  EXPECT_TRUE(g.edge_negated(cx[1]));
  EXPECT_EQ(g.edge_clause(cx[2]), 3u);
  EXPECT_EQ(g.same_sign_clauses(cx[0]), (std::vector<std::uint32_t>{3}));
  EXPECT_EQ(g.opposite_sign_clauses(cx[0]), (std::vector<std::uint32_t>{1}));
  EXPECT_FALSE(g.is_forest());
}

TEST(FactorGraph, PartitionOfNeighbourhood) {
  const Formula f = generate_random_3sat(40, 160, 3);
  const FactorGraph g(f);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto s = g.same_sign_clauses(e), u = g.opposite_sign_clauses(e);
    EXPECT_EQ(s.size() + u.size() + 1, g.var_edges(g.edge_var(e)).size());
  }
}

TEST(Sp, ParallelSweepMatchesReference) {
  const FactorGraph g(generate_random_3sat(2000, 8400, 1));
  SpState s = sp_init(g, MessageInit::Random(4));
  for (int i = 0; i < 5; ++i) {
    const auto ref = sp_update(g, s, 0.1, Exec::kReference);
    const auto par = sp_update(g, s, 0.1, Exec::kParallel);
    ASSERT_TRUE(ref && par);
    EXPECT_LT(max_diff(ref->eta, par->eta), 1e-12);
    s = *ref;
  }
}

TEST(Sp, TreesConvergeToZeroSurveys) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const FactorGraph g(generate_random_tree(2 + seed % 19, seed));
    for (std::uint64_t init = 0; init < 3; ++init) {
      const SpRun r = sp_run(g, MessageInit::Random(init), SpConfig{});
      ASSERT_EQ(r.status, RunStatus::kConverged);
      for (double eta : r.state.eta) EXPECT_LT(eta, 1e-3);
      const auto b = sp_biases(g, r.state);
      ASSERT_TRUE(b);
      for (const auto& v : b->vars) EXPECT_GT(v.p_star, 0.99);
    }
  }
}

TEST(Sp, ContradictoryUnits) {
  const FactorGraph g(Formula(2, {cl({1}), cl({-1}), cl({1, 2})}));
  EXPECT_EQ(sp_run(g, MessageInit::Uniform(0.5), SpConfig{}).status, RunStatus::kContradiction);
}

TEST(Sp, FixedPointStartTakesZeroIterations) {
  const FactorGraph g(generate_random_3sat(300, 1000, 8));
  SpConfig c;
  c.tolerance = 1e-10;
  const SpRun first = sp_run(g, MessageInit::Random(1), c);
  ASSERT_EQ(first.status, RunStatus::kConverged);
  const SpRun again = sp_run(g, first.state, c);
  EXPECT_EQ(again.status, RunStatus::kConverged);
  EXPECT_EQ(again.state.iterations, 0u);
}

TEST(Sp, BiasesAreDistributions) {
  const FactorGraph g(generate_random_3sat(500, 2100, 2));
  const SpRun r = sp_run(g, MessageInit::Random(2), SpConfig{});
  const auto b = sp_biases(g, r.state);
  ASSERT_TRUE(b);
  for (const auto& v : b->vars) {
    EXPECT_NEAR(v.p_plus + v.p_minus + v.p_star, 1.0, 1e-12);
    EXPECT_GE(std::min({v.p_plus, v.p_minus, v.p_star}), 0.0);
  }
}

TEST(CoverBp, QuadLockstepAgreesToRounding) {
  for (std::uint64_t seed : {4u, 5u, 12u, 14u, 20u}) {
    const double alpha = seed % 3 == 0 ? 2.0 : seed % 3 == 1 ? 3.0 : 4.2;
    const FactorGraph g(generate_random_3sat(30, static_cast<std::size_t>(alpha * 30), seed));
    const LockstepResult r = sp_cover_bp_lockstep(g, cover_bp_init_random(g, seed, true), 100);
    EXPECT_EQ(r.sweeps, 100u);
    EXPECT_LT(r.max_diff, 1e-25) << seed;
  }
}

TEST(CoverBp, DoubleLockstepMatchesPublicSweeps) {
  const FactorGraph g(generate_random_3sat(30, 60, 3));
  const CoverBpState init = cover_bp_init_random(g, 3, true);
  CoverBpState bp = init;
  for (int i = 0; i < 20; ++i) bp = *cover_bp_update(g, bp);
  SpState sp;
  sp.eta = cover_bp_eta(g, init);
  for (int i = 0; i < 20; ++i) sp = *sp_update(g, sp, 0.0, Exec::kReference);
  const LockstepResult r = sp_cover_bp_lockstep(g, init, 20, Precision::kDouble);
  EXPECT_EQ(r.sweeps, 20u);
  EXPECT_GE(r.max_diff, max_diff(cover_bp_eta(g, bp), sp.eta));
}

// Where SP contracts, independently iterated trajectories stay together.
TEST(CoverBp, FreeRunningLockstepBelowThreshold) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double alpha = seed % 2 ? 3.0 : 2.0;
    const FactorGraph g(generate_random_3sat(30, static_cast<std::size_t>(alpha * 30), seed));
    CoverBpState bp = cover_bp_init_random(g, seed, true);
    SpState sp;
    sp.eta = cover_bp_eta(g, bp);
    for (int sweep = 0; sweep < 100; ++sweep) {
      bp = *cover_bp_update(g, bp);
      sp = *sp_update(g, sp, 0.0, Exec::kReference);
      ASSERT_LT(max_diff(cover_bp_eta(g, bp), sp.eta), 1e-12) << seed << ' ' << sweep;
    }
  }
}

TEST(PlainBp, ParallelSweepMatchesReference) {
  const FactorGraph g(generate_random_3sat(2000, 8400, 5));
  PlainBpState s = plain_bp_init(g, MessageInit::Random(3));
  for (int i = 0; i < 5; ++i) {
    const auto ref = plain_bp_update(g, s, 0.5, Exec::kReference);
    const auto par = plain_bp_update(g, s, 0.5, Exec::kParallel);
    ASSERT_TRUE(ref && par);
    EXPECT_LT(max_diff(ref->clause_to_var, par->clause_to_var), 1e-12);
    EXPECT_LT(max_diff(ref->var_to_clause, par->var_to_clause), 1e-12);
    s = *ref;
  }
}

TEST(PlainBp, ExactOnTrees) {
  PlainBpConfig c;
  c.tolerance = 1e-14;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Formula f = generate_random_tree(2 + seed % 15, seed);
    const FactorGraph g(f);
    const PlainBpRun r = plain_bp_run(g, MessageInit::Random(seed), c);
    ASSERT_EQ(r.status, RunStatus::kConverged);
    const auto t = plain_bp_marginals(g, r.state);
    ASSERT_TRUE(t);
    const auto p = oracle::positive_fraction(f);
    for (std::size_t x = 0; x < p.size(); ++x) EXPECT_NEAR(t->vars[x].p_plus, p[x], 1e-9);
  }
}

TEST(Marginals, MagnetizationAndCsv) {
  MarginalTable t;
  t.vars = {{0.5, 0.25, 0.25}, {0.0, 1.0, 0.0}};
  EXPECT_EQ(magnetization(t), (std::vector<double>{0.25, -1.0}));
  std::ostringstream out;
  write_marginals_csv(out, t);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "var,p_plus,p_minus,p_star,m,semantics");
}
