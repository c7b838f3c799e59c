#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flexgraph/instance.hpp"

namespace flexgraph {

inline constexpr int kGapDemandLimit = 20;

struct GapReport {
  /// Smallest full-neighbourhood surplus over demand subsets whose surplus
  /// through non-redundant edges is positive; nullopt when no subset
  /// qualifies.
  std::optional<Rational> crp_gap;
  /// A minimizing subset, ascending; ties go to the smaller subset, then the
  /// lexicographically smaller one.
  std::vector<int> argmin_set;
  /// Same minimum with the qualifying test also taken over all of E.
  std::optional<Rational> alt_gap;
  std::vector<int> alt_argmin_set;
};

/// Exhaustive over the 2^m demand subsets. Throws SizeLimitExceeded (m above
/// `demand_limit` or more than 64 supplies) and Infeasible.
GapReport crp_gap(const ProblemInstance& inst, int demand_limit = kGapDemandLimit);

/// The alternative gap alone; nullopt when undefined.
std::optional<Rational> alt_crp_gap(const ProblemInstance& inst, int demand_limit = kGapDemandLimit);

struct PerturbationCheck {
  std::vector<Rational> omega;
  bool admissible = false;
  std::vector<std::string> reasons;  // why it is not admissible
  Rational gap;
  int erp_before = 0;
  std::optional<int> erp_after;  // set when admissible
};

/// Whether nu + omega lies in the robustness neighbourhood: sum zero,
/// ||omega||_1 < 2 * gap, nonnegative and feasible. Throws GapUndefined,
/// InvalidArgument (wrong length).
PerturbationCheck check_perturbation(const ProblemInstance& inst, const std::vector<Rational>& omega);

/// Compares the gap on E with the gap on E without its redundant edges.
/// Throws GapUndefined.
bool gap_redundancy_invariance(const ProblemInstance& inst);

}  // namespace flexgraph
