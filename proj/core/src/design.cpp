#include "flexgraph/design.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"

namespace flexgraph {
namespace {

void require_positive_balanced(std::span<const Rational> demand, std::span<const Rational> supply) {
  if (demand.empty() || supply.empty()) {
    throw Error(ErrorCode::ZeroVector, "design needs at least one demand and one supply");
  }
  for (const auto* side : {&demand, &supply}) {
    if (std::all_of(side->begin(), side->end(), [](const Rational& v) { return sgn(v) == 0; })) {
      throw Error(ErrorCode::ZeroVector, "rate vector is all zero");
    }
    for (const auto& v : *side) {
      if (sgn(v) < 0) throw Error(ErrorCode::NegativeRate, "negative rate", format_rational(v));
      if (sgn(v) == 0) {
        throw Error(ErrorCode::InvalidArgument, "design needs strictly positive rates", "0");
      }
    }
  }
  if (sum(demand) != sum(supply)) {
    throw Error(ErrorCode::UnbalancedTotals, "total demand differs from total supply",
                format_rational(sum(demand)) + " vs " + format_rational(sum(supply)));
  }
}

// Rates divided by their combined gcd: coprime positive integers.
std::vector<std::int64_t> scaled_integers(std::span<const Rational> demand,
                                          std::span<const Rational> supply) {
  const Rational g = gcd_combined(demand, supply);
  std::vector<std::int64_t> out;
  for (const auto* side : {&demand, &supply}) {
    for (const auto& v : *side) {
      const Rational q = v / g;
      if (!q.get_num().fits_slong_p()) {
        throw Error(ErrorCode::SizeLimitExceeded, "scaled rate does not fit in 64 bits",
                    format_rational(q));
      }
      out.push_back(q.get_num().get_si());
    }
  }
  return out;
}

}  // namespace

int min_extreme_components(std::span<const Rational> demand, std::span<const Rational> supply) {
  require_positive_balanced(demand, supply);
  const Rational units = sum(demand) / gcd_combined(demand, supply);
  const Rational value = Rational(static_cast<long>(demand.size() + supply.size())) - units;
  return value > 1 ? static_cast<int>(value.get_num().get_si()) : 1;
}

BalancedCover max_balanced_cover(std::span<const Rational> demand, std::span<const Rational> supply,
                                 int vertex_limit) {
  require_positive_balanced(demand, supply);
  const int m = static_cast<int>(demand.size());
  const int total = m + static_cast<int>(supply.size());
  if (total > vertex_limit || total > 30) {
    throw Error(ErrorCode::SizeLimitExceeded, "balanced cover search limited by vertex count",
                std::to_string(total));
  }
  auto weights = scaled_integers(demand, supply);
  for (std::size_t k = static_cast<std::size_t>(m); k < weights.size(); ++k) weights[k] = -weights[k];

  const std::uint32_t full = (std::uint32_t{1} << total) - 1;
  auto weight_of = [&](std::uint32_t s) {
    std::int64_t w = 0;
    while (s != 0) {
      w += weights[static_cast<std::size_t>(std::countr_zero(s))];
      s &= s - 1;
    }
    return w;
  };

  // best[S] = most zero-sum prefixes over all orderings of S; each ordering
  // with k zero-sum prefixes is a balanced partition of S into k parts.
  std::vector<std::uint8_t> best(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint8_t top = 0;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      top = std::max(top, best[s ^ bit]);
    }
    best[s] = static_cast<std::uint8_t>(top + (weight_of(s) == 0 ? 1 : 0));
  }

  BalancedCover cover;
  std::uint32_t s = full;
  std::uint32_t boundary = full;
  while (s != 0) {
    const std::uint8_t bonus = weight_of(s) == 0 ? 1 : 0;
    std::uint32_t chosen = 0;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (best[s ^ bit] + bonus == best[s]) {
        chosen = bit;
        break;
      }
    }
    s ^= chosen;
    if (s == 0 || weight_of(s) == 0) {
      const std::uint32_t part = boundary ^ s;
      std::vector<int> ds;
      std::vector<int> ss;
      for (int v = 0; v < total; ++v) {
        if ((part >> v) & 1U) {
          if (v < m) {
            ds.push_back(v + 1);
          } else {
            ss.push_back(v - m + 1);
          }
        }
      }
      cover.parts.emplace_back(std::move(ds), std::move(ss));
      boundary = s;
    }
  }
  std::sort(cover.parts.begin(), cover.parts.end());
  return cover;
}

int max_erp_number(std::span<const Rational> demand, std::span<const Rational> supply) {
  return max_balanced_cover(demand, supply).cardinality();
}

int min_edges(std::span<const Rational> demand, std::span<const Rational> supply, int target) {
  const int lowest = min_extreme_components(demand, supply);
  const int highest = max_erp_number(demand, supply);
  if (target < 1) throw Error(ErrorCode::InvalidArgument, "ERP target must be >= 1", std::to_string(target));
  if (target > highest) {
    throw Error(ErrorCode::TargetAboveDstarStar, "no edge set reaches this ERP number",
                std::to_string(target) + " > " + std::to_string(highest));
  }
  return static_cast<int>(demand.size() + supply.size()) - target + (target < lowest ? 1 : 0);
}

namespace {

std::vector<std::vector<Edge>> edges_by_component(const SupportGraph& g) {
  std::vector<std::vector<Edge>> out(static_cast<std::size_t>(g.num_components));
  for (const Edge& e : g.edges) {
    out[static_cast<std::size_t>(g.demand_component[static_cast<std::size_t>(e.demand - 1)])]
        .push_back(e);
  }
  return out;
}

// One merge step: for support edges (i1,j1), (i2,j2) in different trees with
// x1 != x2, move min(x1, x2) onto the cross edges. The smaller edge empties,
// so the support gains exactly one edge and stays a forest.
bool merge_once(Assignment& x, int m, int n) {
  const SupportGraph g = connected_components(m, n, x.support());
  const auto groups = edges_by_component(g);
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      for (const Edge& e1 : groups[a]) {
        for (const Edge& e2 : groups[b]) {
          const Rational x1 = x.at(e1);
          const Rational x2 = x.at(e2);
          if (x1 == x2) continue;
          const Rational amount = x1 < x2 ? x1 : x2;
          x.set(e1, x1 - amount);
          x.set(e2, x2 - amount);
          x.add(Edge{e1.demand, e2.supply}, amount);
          x.add(Edge{e2.demand, e1.supply}, amount);
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

DesignResult design_flexibility(std::span<const Rational> demand, std::span<const Rational> supply,
                                int target, DesignTrace* trace) {
  require_positive_balanced(demand, supply);
  const int m = static_cast<int>(demand.size());
  const int n = static_cast<int>(supply.size());
  const int lowest = min_extreme_components(demand, supply);
  const BalancedCover cover = max_balanced_cover(demand, supply);
  if (target < 1) throw Error(ErrorCode::InvalidArgument, "ERP target must be >= 1", std::to_string(target));
  if (target > cover.cardinality()) {
    throw Error(ErrorCode::TargetAboveDstarStar, "no edge set reaches this ERP number",
                std::to_string(target) + " > " + std::to_string(cover.cardinality()));
  }

  // Phase 0: an extreme point whose support has one tree per cover part.
  Assignment x;
  for (const auto& [ds, ss] : cover.parts) {
    std::vector<Rational> sub_d;
    std::vector<Rational> sub_s;
    for (int i : ds) sub_d.push_back(demand[static_cast<std::size_t>(i - 1)]);
    for (int j : ss) sub_s.push_back(supply[static_cast<std::size_t>(j - 1)]);
    const Assignment local = greedy_extreme_point(sub_d, sub_s);
    for (const auto& [e, v] : local.entries()) {
      x.set(Edge{ds[static_cast<std::size_t>(e.demand - 1)], ss[static_cast<std::size_t>(e.supply - 1)]}, v);
    }
  }
  if (trace != nullptr) trace->iterates.push_back(x);

  // Phase 1: merge trees until max(target, lowest) remain.
  const int stop_at = std::max(target, lowest);
  while (connected_components(m, n, x.support()).num_components > stop_at) {
    if (!merge_once(x, m, n)) {
      throw Error(ErrorCode::InternalMergeStuck, "no pair of unequal support edges across trees",
                  std::to_string(connected_components(m, n, x.support()).num_components));
    }
    if (trace != nullptr) trace->iterates.push_back(x);
  }

  DesignResult result;
  // Phase 2: join the first e = lowest - target + 1 trees through one cycle.
  if (target < lowest) {
    const SupportGraph g = connected_components(m, n, x.support());
    const auto groups = edges_by_component(g);
    const auto e = static_cast<std::size_t>(lowest - target + 1);
    if (groups.size() < e) {
      throw Error(ErrorCode::InvariantViolation, "fewer trees than the cycle needs");
    }
    std::vector<Edge> reps;
    Rational smallest;
    for (std::size_t l = 0; l < e; ++l) {
      reps.push_back(groups[l].front());
      const Rational v = x.at(reps.back());
      if (l == 0 || v < smallest) smallest = v;
    }
    const Rational half = smallest / 2;
    for (std::size_t l = 0; l < e; ++l) {
      x.add(reps[l], -half);
      x.add(Edge{reps[l].demand, reps[(l + 1) % e].supply}, half);
    }
    result.used_cycle = true;
  }

  result.edges = x.support();
  result.edge_count = static_cast<int>(result.edges.size());
  result.assignment = std::move(x);
  const auto inst = ProblemInstance::create(std::vector<Rational>(demand.begin(), demand.end()),
                                            std::vector<Rational>(supply.begin(), supply.end()),
                                            result.edges);
  result.achieved_erp = crp_decomposition(inst).erp_number();
  if (result.achieved_erp != target) {
    throw Error(ErrorCode::InvariantViolation, "designed graph misses the ERP target",
                std::to_string(result.achieved_erp) + " != " + std::to_string(target));
  }
  return result;
}

}  // namespace flexgraph
