#include <gtest/gtest.h>

#include <random>

#include "flexgraph/error.hpp"
#include "flexgraph/instance.hpp"
#include "flexgraph/oracle.hpp"
#include "support.hpp"

namespace flexgraph {
namespace {

using testing::ints;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-0.05"), Rational(-1, 20));
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/", "/3", "--1"}) {
    EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
  }
}

TEST(Rational, GcdOfRationalVectors) {
  const std::vector<Rational> v{Rational(1, 2), Rational(3, 4), Rational(0)};
  EXPECT_EQ(rational_gcd(v), Rational(1, 4));
  EXPECT_EQ(rational_gcd(ints({4, 6, 10})), Rational(2));
  EXPECT_EQ(code_of([] { rational_gcd(ints({0, 0})); }), ErrorCode::ZeroVector);
  EXPECT_EQ(code_of([] { rational_gcd(ints({1, -1})); }), ErrorCode::NegativeRate);
  EXPECT_EQ(gcd_combined(ints({2, 4}), ints({6})), Rational(2));
}

TEST(Instance, ValidationOrder) {
  EXPECT_EQ(code_of([] { ProblemInstance::create(ints({1, 2}), ints({1, 1}), EdgeSet{}); }),
            ErrorCode::UnbalancedTotals);
  EXPECT_EQ(code_of([] { ProblemInstance::create(ints({-1, 2}), ints({1}), EdgeSet{}); }),
            ErrorCode::NegativeRate);
  const std::vector<Edge> out_of_range{{1, 3}};
  EXPECT_EQ(code_of([&] { ProblemInstance::create(ints({1}), ints({1}), out_of_range); }),
            ErrorCode::EdgeOutOfRange);
  const std::vector<Edge> twice{{1, 1}, {1, 1}};
  EXPECT_EQ(code_of([&] { ProblemInstance::create(ints({1}), ints({1}), twice); }),
            ErrorCode::DuplicateEdge);
}

TEST(Instance, AdjacencyIsSorted) {
  const auto inst = testing::fixture("fig4.json");
  EXPECT_EQ(inst.supplies_of(1), (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(inst.demands_of(5), (std::vector<int>{1, 4, 5}));
  EXPECT_EQ(inst.total(), Rational(7));
}

TEST(Assignment, SparseStorage) {
  Assignment x;
  x.set({1, 1}, Rational(1, 2));
  x.add({1, 1}, Rational(-1, 2));
  EXPECT_EQ(x.support_size(), 0U);
  EXPECT_EQ(code_of([&] { x.set({1, 1}, Rational(-1)); }), ErrorCode::InvariantViolation);
}

TEST(Polytope, FeasibilityMatchesHall) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto base = testing::random_feasible(rng, 5);
    // Dropping edges may make the polytope empty.
    EdgeSet kept;
    std::bernoulli_distribution drop(0.3);
    for (const Edge& e : base.edges()) {
      if (!drop(rng)) kept.insert(e);
    }
    const auto inst = base.with_edges(kept);
    EXPECT_EQ(is_feasible(inst), oracle::hall_feasible(inst));
    if (is_feasible(inst)) {
      for (unsigned variant = 0; variant < 3; ++variant) {
        EXPECT_FALSE(assignment_violation(inst, find_feasible_point(inst, variant)));
      }
    } else {
      EXPECT_EQ(code_of([&] { find_feasible_point(inst); }), ErrorCode::Infeasible);
    }
  }
}

TEST(Polytope, ExtremePointExamples) {
  const auto inst = ProblemInstance::create(ints({1, 1}), ints({1, 1}), EdgeSet{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  Assignment identity;
  identity.set({1, 1}, 1);
  identity.set({2, 2}, 1);
  EXPECT_TRUE(is_extreme_point(inst, identity));
  Assignment half;
  for (const Edge& e : inst.edges()) half.set(e, Rational(1, 2));
  EXPECT_FALSE(is_extreme_point(inst, half));
  Assignment wrong;
  wrong.set({1, 1}, 1);
  EXPECT_EQ(code_of([&] { is_extreme_point(inst, wrong); }), ErrorCode::NotFeasiblePoint);
}

TEST(Polytope, GreedyAlwaysGivesExtremePoints) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [nu, mu] = testing::random_rates(rng, 3, 3);
    EdgeSet all;
    for (int i = 1; i <= static_cast<int>(nu.size()); ++i) {
      for (int j = 1; j <= static_cast<int>(mu.size()); ++j) all.insert(Edge{i, j});
    }
    const auto inst = ProblemInstance::create(nu, mu, all);
    for (const auto& x : oracle::all_greedy_extreme_points(nu, mu)) {
      EXPECT_TRUE(is_extreme_point(inst, x));
    }
  }
}

TEST(Polytope, GreedyHonoursChoices) {
  const auto x = greedy_extreme_point(ints({2, 1}), ints({1, 2}), GreedyOrder{{{2, 1}}});
  EXPECT_EQ(x.at({2, 1}), Rational(1));
  EXPECT_EQ(x.at({1, 2}), Rational(2));
  EXPECT_EQ(code_of([] { greedy_extreme_point(ints({1}), ints({1}), GreedyOrder{{{1, 2}}}); }),
            ErrorCode::EdgeOutOfRange);
}

TEST(SupportGraph, ComponentLabelsFollowDemandOrder) {
  const auto g = connected_components(3, 3, EdgeSet{{3, 1}, {1, 3}});
  EXPECT_EQ(g.num_components, 4);
  EXPECT_EQ(g.demand_component, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(g.supply_component, (std::vector<int>{2, 3, 0}));
  EXPECT_TRUE(g.is_forest());
}

}  // namespace
}  // namespace flexgraph
