#include "flexgraph/robustness.hpp"

#include <bit>
#include <cstdint>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"

namespace flexgraph {
namespace {

struct Best {
  std::optional<Rational> value;
  std::vector<int> set;

  void offer(const Rational& v, std::vector<int> c) {
    if (!value || v < *value ||
        (v == *value && (c.size() < set.size() || (c.size() == set.size() && c < set)))) {
      value = v;
      set = std::move(c);
    }
  }
};

Rational supply_mass(const ProblemInstance& inst, std::uint64_t mask) {
  Rational total;
  while (mask != 0) {
    total += inst.supply(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return total;
}

}  // namespace

GapReport crp_gap(const ProblemInstance& inst, int demand_limit) {
  const int m = inst.num_demand();
  if (m > demand_limit || m > 30) {
    throw Error(ErrorCode::SizeLimitExceeded, "gap enumeration limited by demand count",
                std::to_string(m));
  }
  if (inst.num_supply() > 64) {
    throw Error(ErrorCode::SizeLimitExceeded, "gap enumeration limited to 64 supplies",
                std::to_string(inst.num_supply()));
  }
  const EdgeSet redundant = redundant_edges(inst);

  std::vector<std::uint64_t> full_adj(static_cast<std::size_t>(m), 0);
  std::vector<std::uint64_t> kept_adj(static_cast<std::size_t>(m), 0);
  for (const Edge& e : inst.edges()) {
    const std::uint64_t bit = std::uint64_t{1} << (e.supply - 1);
    full_adj[static_cast<std::size_t>(e.demand - 1)] |= bit;
    if (!redundant.contains(e)) kept_adj[static_cast<std::size_t>(e.demand - 1)] |= bit;
  }

  const std::uint32_t count = std::uint32_t{1} << m;
  std::vector<std::uint64_t> full_n(count, 0);
  std::vector<std::uint64_t> kept_n(count, 0);
  Best gap;
  Best alt;
  for (std::uint32_t c = 1; c < count; ++c) {
    const int low = std::countr_zero(c);
    full_n[c] = full_n[c & (c - 1)] | full_adj[static_cast<std::size_t>(low)];
    kept_n[c] = kept_n[c & (c - 1)] | kept_adj[static_cast<std::size_t>(low)];

    Rational demand;
    std::vector<int> members;
    for (std::uint32_t rest = c; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest) + 1;
      demand += inst.demand(i);
      members.push_back(i);
    }
    const Rational full_surplus = supply_mass(inst, full_n[c]) - demand;
    if (sgn(full_surplus) > 0) alt.offer(full_surplus, members);
    if (sgn(supply_mass(inst, kept_n[c]) - demand) > 0) gap.offer(full_surplus, std::move(members));
  }
  return GapReport{gap.value, gap.set, alt.value, alt.set};
}

std::optional<Rational> alt_crp_gap(const ProblemInstance& inst, int demand_limit) {
  return crp_gap(inst, demand_limit).alt_gap;
}

PerturbationCheck check_perturbation(const ProblemInstance& inst, const std::vector<Rational>& omega) {
  if (static_cast<int>(omega.size()) != inst.num_demand()) {
    throw Error(ErrorCode::InvalidArgument, "perturbation length differs from demand count",
                std::to_string(omega.size()));
  }
  const GapReport report = crp_gap(inst);
  if (!report.crp_gap) throw Error(ErrorCode::GapUndefined, "CRP gap is undefined for this instance");

  PerturbationCheck check;
  check.omega = omega;
  check.gap = *report.crp_gap;
  check.erp_before = crp_decomposition(inst).erp_number();

  Rational total;
  Rational norm;
  std::vector<Rational> moved;
  bool nonnegative = true;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    total += omega[i];
    norm += abs(omega[i]);
    moved.push_back(inst.demands()[i] + omega[i]);
    if (sgn(moved.back()) < 0) nonnegative = false;
  }
  if (sgn(total) != 0) check.reasons.push_back("sum of omega is " + format_rational(total));
  if (norm >= 2 * check.gap) {
    check.reasons.push_back("||omega||_1 = " + format_rational(norm) + " is not below 2*gap = " +
                            format_rational(2 * check.gap));
  }
  if (!nonnegative) check.reasons.push_back("perturbed demand is negative");
  if (check.reasons.empty()) {
    const auto moved_inst = inst.with_demand(moved);
    if (!is_feasible(moved_inst)) {
      check.reasons.push_back("perturbed polytope is empty");
    } else {
      check.erp_after = crp_decomposition(moved_inst).erp_number();
    }
  }
  check.admissible = check.reasons.empty();
  return check;
}

bool gap_redundancy_invariance(const ProblemInstance& inst) {
  const GapReport with = crp_gap(inst);
  if (!with.crp_gap) throw Error(ErrorCode::GapUndefined, "CRP gap is undefined for this instance");
  EdgeSet kept;
  const EdgeSet redundant = redundant_edges(inst);
  for (const Edge& e : inst.edges()) {
    if (!redundant.contains(e)) kept.insert(e);
  }
  const GapReport without = crp_gap(inst.with_edges(kept));
  return without.crp_gap && *without.crp_gap == *with.crp_gap;
}

}  // namespace flexgraph
