#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "flexgraph/error.hpp"
#include "flexgraph/planning.hpp"
#include "support.hpp"

namespace flexgraph {
namespace {

using testing::fixture;

void for_each_valid_k(int eta, int horizon, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> k;
  std::function<void(int)> grow = [&](int from) {
    if (valid_cycle_steps(eta, horizon, k)) visit(k);
    for (int next = from; next <= horizon; ++next) {
      k.push_back(next);
      // Prefixes of admissible vectors only need the per-step bounds.
      const int l = static_cast<int>(k.size());
      if (next <= eta + l - 1) grow(next + 2);
      k.pop_back();
    }
  };
  grow(2);
}

TEST(Trajectory, TwoStepSequences) {
  const auto inst = fixture("fig7.json");
  EXPECT_EQ(erp_trajectory(inst, std::vector<Edge>{{4, 3}, {2, 1}}), (std::vector<int>{3, 2}));
  EXPECT_EQ(erp_trajectory(inst, std::vector<Edge>{{2, 3}, {4, 1}}), (std::vector<int>{4, 1}));
  EXPECT_THROW(erp_trajectory(inst, std::vector<Edge>{{1, 1}}), Error);
}

TEST(Trajectory, InternalEdgesKeepErp) {
  const auto inst = fixture("fig4.json");
  EXPECT_EQ(erp_trajectory(inst, std::vector<Edge>{{2, 3}}), (std::vector<int>{3}));
}

TEST(Structured, NineComponentPattern) {
  const auto s = structured_schedule(9, 11, {4, 8, 11});
  const std::vector<std::optional<Edge>> expected{
      Edge{1, 2}, Edge{2, 3}, Edge{3, 4}, Edge{4, 1}, Edge{4, 5}, Edge{5, 6},
      Edge{6, 7}, Edge{7, 4}, Edge{7, 8}, Edge{8, 9}, Edge{9, 7}};
  EXPECT_EQ(s.edges, expected);
  EXPECT_EQ(erp_trajectory(diagonal_instance(9), s.edges),
            (std::vector<int>{9, 9, 9, 6, 6, 6, 6, 3, 3, 3, 1}));
}

TEST(Structured, SingleCycleAndPureChain) {
  const auto one = structured_schedule(5, 7, {5});
  EXPECT_EQ(erp_trajectory(diagonal_instance(5), one.edges), (std::vector<int>{5, 5, 5, 5, 1, 1, 1}));
  const auto chain = structured_schedule(5, 4, {});
  EXPECT_EQ(erp_trajectory(diagonal_instance(5), chain.edges), (std::vector<int>{5, 5, 5, 5}));
}

TEST(Structured, InvalidK) {
  for (const auto& k : std::vector<std::vector<int>>{{1}, {3, 4}, {12}, {5, 3}}) {
    try {
      structured_schedule(9, 11, k);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidK);
    }
  }
  EXPECT_FALSE(valid_cycle_steps(4, 5, {}));  // chain runs out before the budget
}

TEST(Structured, InductionMatchesRecomputation) {
  for (int eta = 1; eta <= 6; ++eta) {
    for (int horizon = 0; horizon <= 8; ++horizon) {
      const auto diag = diagonal_instance(eta);
      for_each_valid_k(eta, horizon, [&](const std::vector<int>& k) {
        const auto s = structured_schedule(eta, horizon, k);
        ASSERT_EQ(erp_trajectory(diag, s.edges), induction_trajectory(eta, horizon, k));
      });
    }
  }
  std::mt19937_64 rng(5);
  for (int eta = 7; eta <= 8; ++eta) {
    for (int horizon = 1; horizon <= 12; ++horizon) {
      const auto diag = diagonal_instance(eta);
      std::vector<std::vector<int>> all;
      for_each_valid_k(eta, horizon, [&](const std::vector<int>& k) { all.push_back(k); });
      std::shuffle(all.begin(), all.end(), rng);
      if (all.size() > 25) all.resize(25);
      for (const auto& k : all) {
        ASSERT_EQ(erp_trajectory(diag, structured_schedule(eta, horizon, k).edges),
                  induction_trajectory(eta, horizon, k));
      }
    }
  }
}

TEST(Plan, SumObjectiveEta9Budget11) {
  const auto plan = plan_schedule(9, 11, Objective::sum());
  EXPECT_EQ(plan.value, 61.0);
  EXPECT_EQ(plan.trajectory, induction_trajectory(9, 11, plan.schedule.cycle_steps));
  EXPECT_EQ(objective_value(Objective::sum(), induction_trajectory(9, 11, {4, 8, 11})), 61.0);
  ASSERT_TRUE(plan.closed_form);
  EXPECT_EQ(plan.closed_form->k, (std::vector<int>{4, 7, 9}));
  EXPECT_EQ(plan.closed_form->value, 62.0);
  EXPECT_TRUE(plan.discrepancy);
}

TEST(Plan, FinalObjective) {
  const auto plan = plan_schedule(9, 11, Objective::final_value());
  EXPECT_EQ(plan.schedule.cycle_steps, (std::vector<int>{9}));
  EXPECT_EQ(plan.trajectory, (std::vector<int>{9, 9, 9, 9, 9, 9, 9, 9, 1, 1, 1}));
  EXPECT_FALSE(plan.discrepancy);
}

TEST(Plan, TinyBudget) {
  const auto plan = plan_schedule(2, 1, Objective::sum());
  EXPECT_TRUE(plan.schedule.cycle_steps.empty());
  EXPECT_EQ(plan.trajectory, (std::vector<int>{2}));
}

TEST(Plan, DpMatchesEnumerationOfTheFamily) {
  for (int eta = 1; eta <= 7; ++eta) {
    for (int horizon = 0; horizon <= 9; ++horizon) {
      double best = INFINITY;
      for_each_valid_k(eta, horizon, [&](const std::vector<int>& k) {
        best = std::min(best, objective_value(Objective::sum(), induction_trajectory(eta, horizon, k)));
      });
      EXPECT_EQ(plan_schedule(eta, horizon, Objective::sum()).value, best) << eta << "," << horizon;
    }
  }
}

TEST(Plan, StructuredFamilyIsGloballyOptimal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(0.0, 2.0);
  for (int eta = 1; eta <= 4; ++eta) {
    const auto diag = diagonal_instance(eta);
    for (int horizon = 1; horizon <= 3; ++horizon) {
      std::vector<Objective> objectives{Objective::sum(), Objective::final_value()};
      std::vector<std::vector<double>> tables(static_cast<std::size_t>(horizon));
      for (auto& row : tables) {
        double v = 0.0;
        for (int x = 0; x < eta; ++x) row.push_back(v += step(rng));
      }
      objectives.push_back(Objective::from_tables(tables));
      for (const auto& objective : objectives) {
        const auto exhaustive = optimal_sequence_exhaustive(diag, horizon, objective);
        const auto plan = plan_schedule(eta, horizon, objective);
        EXPECT_LE(plan.value, exhaustive.value + 1e-12) << eta << "," << horizon << " " << objective.name();
        EXPECT_GE(plan.value, exhaustive.value - 1e-12);
      }
    }
  }
}

TEST(Plan, FirstStepReachingOneIsEta) {
  for (int eta = 2; eta <= 8; ++eta) {
    const int horizon = eta + 3;
    int first = horizon + 1;
    for_each_valid_k(eta, horizon, [&](const std::vector<int>& k) {
      const auto t = induction_trajectory(eta, horizon, k);
      for (int s = 1; s <= horizon; ++s) {
        if (t[static_cast<std::size_t>(s - 1)] == 1) {
          first = std::min(first, s);
          break;
        }
      }
    });
    EXPECT_EQ(first, eta);
  }
}

TEST(Plan, ScalingTrend) {
  int last_p = 0;
  double last_ratio = INFINITY;
  for (int eta : {4, 9, 16, 25}) {
    const int horizon = eta + static_cast<int>(std::ceil(std::sqrt(eta))) + 1;
    const auto plan = plan_schedule(eta, horizon, Objective::sum());
    const double single = objective_value(Objective::sum(), induction_trajectory(eta, horizon, {eta}));
    const double ratio = plan.value / single;
    EXPECT_GE(plan.schedule.cycle_count(), last_p);
    EXPECT_LT(ratio, last_ratio);
    last_p = plan.schedule.cycle_count();
    last_ratio = ratio;
  }
  EXPECT_GT(last_p, 2);
}

TEST(Objective, TablesMustBeMonotone) {
  EXPECT_THROW(Objective::from_tables({{2.0, 1.0}}), Error);
  const auto o = Objective::from_tables({{0.0, 1.0}, {1.0, 5.0}});
  EXPECT_EQ(o.cost(2, 2, 2), 5.0);
  EXPECT_THROW(o.cost(1, 2, 3), Error);
}

TEST(Report, Fig7FinalObjective) {
  const auto report = greedy_vs_optimal_report(fixture("fig7.json"), 2, Objective::final_value());
  EXPECT_EQ(report.greedy.trajectory, (std::vector<int>{3, 2}));
  EXPECT_EQ(report.optimal.trajectory, (std::vector<int>{4, 1}));
  EXPECT_EQ(report.optimal.edges, (std::vector<std::optional<Edge>>{Edge{2, 3}, Edge{4, 1}}));
  EXPECT_EQ(report.optimal_method, "exhaustive");
}

TEST(Report, EmptyBudget) {
  const auto report = greedy_vs_optimal_report(fixture("fig7.json"), 0, Objective::sum());
  EXPECT_TRUE(report.greedy.trajectory.empty());
  EXPECT_TRUE(report.optimal.trajectory.empty());
}

TEST(Report, DiagonalStructuredEqualsExhaustive) {
  const auto diag = diagonal_instance(3);
  const auto report = greedy_vs_optimal_report(diag, 3, Objective::sum());
  EXPECT_EQ(report.optimal_method, "structured");
  const auto exhaustive = optimal_sequence_exhaustive(diag, 3, Objective::sum());
  EXPECT_EQ(report.optimal.value, exhaustive.value);
  EXPECT_LE(report.optimal.value, report.greedy.value);
}

}  // namespace
}  // namespace flexgraph
