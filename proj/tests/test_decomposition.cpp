#include <gtest/gtest.h>

#include <random>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"
#include "flexgraph/oracle.hpp"
#include "support.hpp"

namespace flexgraph {
namespace {

using testing::fixture;
using testing::ints;

TEST(Decomposition, Fig4Golden) {
  const auto inst = fixture("fig4.json");
  const auto d = crp_decomposition(inst);
  EXPECT_EQ(d.redundant_edges, (EdgeSet{{1, 3}, {1, 5}, {2, 4}}));
  ASSERT_EQ(d.erp_number(), 3);
  EXPECT_EQ(d.components[0].demands, (std::vector<int>{1}));
  EXPECT_EQ(d.components[0].supplies, (std::vector<int>{2}));
  EXPECT_EQ(d.components[1].demands, (std::vector<int>{2, 3}));
  EXPECT_EQ(d.components[1].supplies, (std::vector<int>{1, 3}));
  EXPECT_EQ(d.components[2].demands, (std::vector<int>{4, 5}));
  EXPECT_EQ(d.components[2].supplies, (std::vector<int>{4, 5}));
}

TEST(Decomposition, CompleteTwoByTwoIsCrp) {
  const auto inst = ProblemInstance::create(ints({1, 1}), ints({1, 1}), EdgeSet{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const auto d = crp_decomposition(inst);
  EXPECT_TRUE(d.redundant_edges.empty());
  EXPECT_EQ(d.erp_number(), 1);
  EXPECT_TRUE(crp_condition(inst));
}

TEST(Decomposition, IdentityGraphHasSingletons) {
  const auto inst = ProblemInstance::create(ints({1, 1}), ints({1, 1}), EdgeSet{{1, 1}, {2, 2}});
  EXPECT_EQ(crp_decomposition(inst).erp_number(), 2);
  EXPECT_FALSE(crp_condition(inst));
}

TEST(Decomposition, InfeasibleThrows) {
  const auto inst = ProblemInstance::create(ints({2, 0}), ints({1, 1}), EdgeSet{{1, 1}});
  EXPECT_THROW(redundant_edges(inst), Error);
}

TEST(Decomposition, SeedPointDoesNotMatter) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_feasible(rng, 5);
    const auto expected = redundant_edges(inst, find_feasible_point(inst, 0));
    for (unsigned v = 1; v < 4; ++v) EXPECT_EQ(redundant_edges(inst, find_feasible_point(inst, v)), expected);
  }
}

TEST(Decomposition, MatchesFlowOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = testing::random_feasible(rng, 6);
    EdgeSet oracle_set;
    for (const Edge& e : inst.edges()) {
      if (oracle::is_redundant(inst, e)) oracle_set.insert(e);
    }
    ASSERT_EQ(redundant_edges(inst), oracle_set) << "trial " << trial;
    const auto d = crp_decomposition(inst);
    EXPECT_EQ(crp_condition(inst), oracle::crp_condition_by_subsets(inst));
    EXPECT_EQ(d.erp_number(), *oracle::erp_number(inst.demands(), inst.supplies(), inst.edges()));
  }
}

TEST(Decomposition, WorkIsPolynomial) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_feasible(rng, 8);
    RedundancyWork work;
    redundant_edges(inst, find_feasible_point(inst), &work);
    const std::size_t v = static_cast<std::size_t>(inst.num_demand() + inst.num_supply());
    EXPECT_LE(work.total(), 4 * v * (v + inst.edges().size()));
  }
}

TEST(Decomposition, ComponentsAreBalancedAndCrp) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_feasible(rng, 5);
    for (const auto& c : crp_decomposition(inst).components) {
      const auto piece = subinstance(inst, c.demands, c.supplies);
      EXPECT_TRUE(crp_condition(piece));
    }
  }
}

TEST(CrpGraph, Fig7Arcs) {
  const auto d = crp_decomposition(fixture("fig7.json"));
  const auto dag = crp_graph(d);
  std::set<std::pair<int, int>> arcs;
  for (const auto& a : dag.arcs()) arcs.insert({a.from, a.to});
  EXPECT_EQ(arcs, (std::set<std::pair<int, int>>{{1, 2}, {3, 4}, {1, 4}}));
  EXPECT_EQ(dag.sinks(), (std::vector<int>{2, 4}));
  EXPECT_EQ(dag.sources(), (std::vector<int>{1, 3}));
  EXPECT_EQ(dag.topological_order(), (std::vector<int>{1, 2, 3, 4}));
}

TEST(CrpGraph, AlwaysAcyclic) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = crp_decomposition(testing::random_feasible(rng, 6));
    const auto dag = crp_graph(d);
    EXPECT_TRUE(dag.is_acyclic());
    EXPECT_EQ(dag.arcs().size(), d.redundant_edges.size());
  }
}

TEST(CrpGraph, CycleIsRejected) {
  CrpDecomposition d;
  d.components.resize(2);
  d.demand_component = {1, 2};
  d.supply_component = {1, 2};
  d.redundant_edges = {{1, 2}, {2, 1}};
  EXPECT_THROW(crp_graph(d), Error);
}

TEST(SscBasis, ProjectsOntoComponentMeans) {
  const auto d = crp_decomposition(fixture("fig4.json"));
  const auto basis = ssc_basis(d);
  EXPECT_EQ(basis.dimension(), 3);
  const std::vector<double> q{5, 1, 3, 2, 4};
  EXPECT_EQ(basis.project(q), (std::vector<double>{5, 2, 2, 3, 3}));
}

TEST(VerifyDecomposition, Fig4Covers) {
  const auto inst = fixture("fig4.json");
  EXPECT_TRUE(verify_decomposition(inst, {{4, 5}, {2, 3}, {1}}));
  EXPECT_FALSE(verify_decomposition(inst, {{1}, {2, 3}, {4, 5}}));
  try {
    verify_decomposition(inst, {{1, 2}, {2, 3, 4, 5}});
    FAIL() << "overlapping cover accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAPartition);
  }
}

TEST(Alternating, ReachableFromSupply) {
  const auto inst = fixture("fig4.json");
  Assignment x;
  x.set({1, 2}, 1);
  x.set({2, 1}, 1);
  x.set({3, 1}, 1);
  x.set({3, 3}, 1);
  x.set({4, 4}, 1);
  x.set({4, 5}, 1);
  x.set({5, 5}, 1);
  ASSERT_FALSE(assignment_violation(inst, x));
  EXPECT_EQ(alternating_reachable_demands(inst, x, 4), (std::vector<int>{4, 5}));
  EXPECT_EQ(alternating_reachable_demands(inst, x, 3), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(alternating_reachable_demands(inst, x, 2), (std::vector<int>{1, 2, 3, 4, 5}));
}

}  // namespace
}  // namespace flexgraph
