#include <gtest/gtest.h>

#include <random>

#include "flexgraph/augmentation.hpp"
#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"
#include "support.hpp"

namespace flexgraph {
namespace {

using testing::fixture;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

ProblemInstance plus(const ProblemInstance& inst, const Edge& e) {
  EdgeSet grown = inst.edges();
  grown.insert(e);
  return inst.with_edges(grown);
}

TEST(Augmentation, TwoStepRows) {
  const auto inst = fixture("fig7.json");
  const auto greedy_first = add_edge_effect(inst, {4, 3});
  EXPECT_EQ(greedy_first.cycle_vertices, (std::vector<int>{3, 4}));
  EXPECT_EQ(greedy_first.new_erp, 3);

  const auto optimal_first = add_edge_effect(inst, {2, 3});
  EXPECT_TRUE(optimal_first.cycle_vertices.empty());
  EXPECT_EQ(optimal_first.new_erp, 4);
  EXPECT_EQ(optimal_first.delta, 0);

  const auto optimal_second = add_edge_effect(plus(inst, {2, 3}), {4, 1});
  EXPECT_EQ(optimal_second.cycle_vertices, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(optimal_second.new_erp, 1);
}

TEST(Augmentation, Errors) {
  const auto inst = fixture("fig7.json");
  EXPECT_EQ(code_of([&] { add_edge_effect(inst, {1, 1}); }), ErrorCode::EdgeAlreadyPresent);
  EXPECT_EQ(code_of([&] { add_edge_effect(inst, {5, 1}); }), ErrorCode::IndexOutOfRange);
  const auto crp = fixture("fig4.json");
  EXPECT_EQ(code_of([&] { best_single_edge(plus(crp, {4, 2})); }), ErrorCode::AlreadyCrp);
}

TEST(Augmentation, BestSingleEdge) {
  const auto fig4 = best_single_edge(fixture("fig4.json"));
  EXPECT_EQ(fig4.edge, (Edge{4, 2}));
  EXPECT_EQ(fig4.new_erp, 1);
  const auto fig7 = best_single_edge(fixture("fig7.json"));
  EXPECT_EQ(fig7.new_erp, 3);
  EXPECT_EQ(fig7.edge, (Edge{2, 1}));
  EXPECT_EQ(best_single_edge_exhaustive(fixture("fig7.json")).new_erp, 3);
}

TEST(Augmentation, MatchesRecomputation) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = testing::random_feasible(rng, 6);
    const auto decomp = crp_decomposition(inst);
    const auto dag = crp_graph(decomp);
    for (int i = 1; i <= inst.num_demand(); ++i) {
      for (int j = 1; j <= inst.num_supply(); ++j) {
        if (inst.has_edge({i, j})) continue;
        const auto effect = add_edge_effect(inst, decomp, dag, {i, j});
        ASSERT_EQ(effect.new_erp, crp_decomposition(plus(inst, {i, j})).erp_number());
        EXPECT_LE(effect.delta, 0);
        if (effect.dag_edge.from == effect.dag_edge.to) EXPECT_EQ(effect.delta, 0);
      }
    }
  }
}

TEST(Augmentation, SinkSourceSearchLosesNothing) {
  std::mt19937_64 rng(73);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = testing::random_feasible(rng, 6);
    if (crp_decomposition(inst).erp_number() < 2) continue;
    ++checked;
    EXPECT_EQ(best_single_edge(inst).new_erp, best_single_edge_exhaustive(inst).new_erp);
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace flexgraph
