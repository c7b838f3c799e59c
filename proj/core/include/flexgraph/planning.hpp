#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flexgraph/instance.hpp"

namespace flexgraph {

/// Per-step costs f_1..f_K of the ERP number, each non-decreasing.
class Objective {
 public:
  enum class Kind { Sum, Final, Tables };

  /// f_s(v) = v for every step.
  static Objective sum();
  /// f_K(v) = v, all earlier steps free.
  static Objective final_value();
  /// tables[s-1][v-1] = f_s(v). Throws InvalidArgument if a row decreases.
  static Objective from_tables(std::vector<std::vector<double>> tables);

  Kind kind() const { return kind_; }
  const std::vector<std::vector<double>>& tables() const { return tables_; }
  std::string name() const;

  /// Cost of ERP value `erp` at 1-based `step` of a `horizon`-step plan.
  double cost(int step, int horizon, int erp) const;

 private:
  Kind kind_ = Kind::Sum;
  std::vector<std::vector<double>> tables_;
};

/// An edge-addition plan of the structured family: chain edges between
/// consecutive components, with cycle-closing edges at steps k_1 < ... < k_p.
/// Edges are expressed in component coordinates (demand of component a,
/// supply of component b). A step has no edge only when the graph is
/// complete.
struct Schedule {
  int eta = 0;
  int horizon = 0;
  std::vector<int> cycle_steps;
  std::vector<std::optional<Edge>> edges;

  int cycle_count() const { return static_cast<int>(cycle_steps.size()); }
};

/// Whether k is usable: strictly increasing with k_1 >= 2 and gaps >= 2,
/// k_l <= eta + l - 1, k_p <= K, and the chain is long enough for the steps
/// after k_p unless the ERP number has already reached 1.
bool valid_cycle_steps(int eta, int horizon, const std::vector<int>& k);

/// ERP number after each step of the structured schedule, from the
/// induction: eta until k_1, then eta - k_l + l from step k_l on.
std::vector<int> induction_trajectory(int eta, int horizon, const std::vector<int>& k);

/// Throws InvalidK.
Schedule structured_schedule(int eta, int horizon, const std::vector<int>& k);

/// nu = mu = 1_eta with the diagonal edges: eta singleton CRP components.
ProblemInstance diagonal_instance(int eta);

/// Maps a schedule onto `inst`, whose CRP decomposition must have
/// schedule.eta components and no redundant edges. Component a is represented
/// by its lowest demand and lowest supply. Steps past ERP 1 use the smallest
/// absent edge of the growing graph.
std::vector<std::optional<Edge>> realize(const ProblemInstance& inst, const Schedule& schedule);

/// ERP number after each addition, recomputed from scratch; the incremental
/// cycle count is checked against it. Throws EdgeAlreadyPresent.
std::vector<int> erp_trajectory(const ProblemInstance& inst, const std::vector<Edge>& edges);

/// Same, where a missing edge leaves the graph unchanged.
std::vector<int> erp_trajectory(const ProblemInstance& inst,
                                const std::vector<std::optional<Edge>>& edges);

double objective_value(const Objective& objective, const std::vector<int>& trajectory);

struct ClosedForm {
  int p = 0;
  std::vector<int> k;
  bool valid = false;
  double value = 0.0;  // meaningful only when valid
};

struct PlanResult {
  Schedule schedule;
  std::vector<int> trajectory;
  double value = 0.0;
  /// Closed-form (p, k) for the sum and final objectives.
  std::optional<ClosedForm> closed_form;
  /// Closed form invalid or worse than the DP optimum.
  bool discrepancy = false;
};

/// Optimal structured schedule by dynamic programming over (l, k_l). Ties go
/// to the smaller p, then the lexicographically smaller k.
PlanResult plan_schedule(int eta, int horizon, const Objective& objective);

struct SequenceResult {
  std::vector<std::optional<Edge>> edges;
  std::vector<int> trajectory;
  double value = 0.0;
};

inline constexpr double kSequenceLimit = 5e6;

/// Best sequence of `horizon` absent edges over every ordering, ties to the
/// lexicographically smaller sequence. Throws SizeLimitExceeded when the
/// number of sequences exceeds `limit`.
SequenceResult optimal_sequence_exhaustive(const ProblemInstance& inst, int horizon,
                                           const Objective& objective,
                                           double limit = kSequenceLimit);

struct GreedyOptimalReport {
  SequenceResult greedy;
  SequenceResult optimal;
  /// "structured" when the optimum came from plan_schedule, "exhaustive"
  /// otherwise.
  std::string optimal_method;
  std::vector<double> greedy_cumulative;
  std::vector<double> optimal_cumulative;
};

/// Greedy repeated best_single_edge against the optimum. Redundant-edge-free
/// instances use the structured planner; others fall back to exhaustive
/// search.
GreedyOptimalReport greedy_vs_optimal_report(const ProblemInstance& inst, int horizon,
                                             const Objective& objective);

}  // namespace flexgraph
