#include "flexgraph/instance.hpp"

#include <algorithm>
#include <numeric>

#include "flexgraph/error.hpp"
#include "max_flow.hpp"
#include "union_find.hpp"

namespace flexgraph {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.demand) + "," + std::to_string(e.supply) + ")";
}

ProblemInstance ProblemInstance::create(std::vector<Rational> demand, std::vector<Rational> supply,
                                        std::span<const Edge> edges) {
  for (std::size_t i = 0; i < demand.size(); ++i) {
    if (sgn(demand[i]) < 0) {
      throw Error(ErrorCode::NegativeRate, "demand " + std::to_string(i + 1) + " is negative",
                  format_rational(demand[i]));
    }
  }
  for (std::size_t j = 0; j < supply.size(); ++j) {
    if (sgn(supply[j]) < 0) {
      throw Error(ErrorCode::NegativeRate, "supply " + std::to_string(j + 1) + " is negative",
                  format_rational(supply[j]));
    }
  }
  const Rational dsum = sum(demand);
  const Rational ssum = sum(supply);
  if (dsum != ssum) {
    throw Error(ErrorCode::UnbalancedTotals, "total demand differs from total supply",
                format_rational(dsum) + " vs " + format_rational(ssum));
  }

  ProblemInstance inst;
  const int m = static_cast<int>(demand.size());
  const int n = static_cast<int>(supply.size());
  for (const Edge& e : edges) {
    if (e.demand < 1 || e.demand > m || e.supply < 1 || e.supply > n) {
      throw Error(ErrorCode::EdgeOutOfRange, "edge endpoint outside [1,m]x[1,n]", to_string(e));
    }
    if (!inst.edges_.insert(e).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge listed twice", to_string(e));
    }
  }
  inst.demand_ = std::move(demand);
  inst.supply_ = std::move(supply);
  inst.demand_adj_.assign(static_cast<std::size_t>(m), {});
  inst.supply_adj_.assign(static_cast<std::size_t>(n), {});
  for (const Edge& e : inst.edges_) {
    inst.demand_adj_[static_cast<std::size_t>(e.demand - 1)].push_back(e.supply);
    inst.supply_adj_[static_cast<std::size_t>(e.supply - 1)].push_back(e.demand);
  }
  return inst;
}

ProblemInstance ProblemInstance::create(std::vector<Rational> demand, std::vector<Rational> supply,
                                        const EdgeSet& edges) {
  std::vector<Edge> list(edges.begin(), edges.end());
  return create(std::move(demand), std::move(supply), list);
}

Rational ProblemInstance::total() const { return sum(demand_); }

ProblemInstance ProblemInstance::with_edges(const EdgeSet& edges) const {
  return create(demand_, supply_, edges);
}

ProblemInstance ProblemInstance::with_demand(std::vector<Rational> demand) const {
  if (demand.size() != demand_.size()) {
    throw Error(ErrorCode::InvalidArgument, "demand vector has the wrong length",
                std::to_string(demand.size()));
  }
  return create(std::move(demand), supply_, edges_);
}

Rational Assignment::at(const Edge& e) const {
  auto it = entries_.find(e);
  return it == entries_.end() ? Rational(0) : it->second;
}

void Assignment::set(const Edge& e, const Rational& value) {
  if (sgn(value) < 0) {
    throw Error(ErrorCode::InvariantViolation, "negative assignment entry at " + to_string(e),
                format_rational(value));
  }
  if (sgn(value) == 0) {
    entries_.erase(e);
  } else {
    entries_[e] = value;
  }
}

void Assignment::add(const Edge& e, const Rational& delta) { set(e, at(e) + delta); }

EdgeSet Assignment::support() const {
  EdgeSet s;
  for (const auto& [e, v] : entries_) s.insert(s.end(), e);
  return s;
}

Rational Assignment::row_sum(int i) const {
  Rational total = 0;
  for (auto it = entries_.lower_bound(Edge{i, 0}); it != entries_.end() && it->first.demand == i;
       ++it) {
    total += it->second;
  }
  return total;
}

Rational Assignment::column_sum(int j) const {
  Rational total = 0;
  for (const auto& [e, v] : entries_) {
    if (e.supply == j) total += v;
  }
  return total;
}

std::optional<std::string> assignment_violation(const ProblemInstance& inst, const Assignment& x) {
  const int m = inst.num_demand();
  const int n = inst.num_supply();
  std::vector<Rational> rows(static_cast<std::size_t>(m), 0);
  std::vector<Rational> cols(static_cast<std::size_t>(n), 0);
  for (const auto& [e, v] : x.entries()) {
    if (!inst.has_edge(e)) return "positive entry off the edge set at " + to_string(e);
    rows[static_cast<std::size_t>(e.demand - 1)] += v;
    cols[static_cast<std::size_t>(e.supply - 1)] += v;
  }
  for (int i = 1; i <= m; ++i) {
    if (rows[static_cast<std::size_t>(i - 1)] != inst.demand(i)) {
      return "row " + std::to_string(i) + " sums to " +
             format_rational(rows[static_cast<std::size_t>(i - 1)]);
    }
  }
  for (int j = 1; j <= n; ++j) {
    if (cols[static_cast<std::size_t>(j - 1)] != inst.supply(j)) {
      return "column " + std::to_string(j) + " sums to " +
             format_rational(cols[static_cast<std::size_t>(j - 1)]);
    }
  }
  return std::nullopt;
}

SupportGraph connected_components(int num_demand, int num_supply, const EdgeSet& edges) {
  detail::UnionFind uf(num_demand + num_supply);
  for (const Edge& e : edges) uf.unite(e.demand - 1, num_demand + e.supply - 1);

  SupportGraph g;
  g.edges = edges;
  g.demand_component.assign(static_cast<std::size_t>(num_demand), -1);
  g.supply_component.assign(static_cast<std::size_t>(num_supply), -1);
  std::vector<int> label_of_root(static_cast<std::size_t>(num_demand + num_supply), -1);
  // Scanning demands first, then supplies, yields the canonical order.
  for (int v = 0; v < num_demand + num_supply; ++v) {
    const auto root = static_cast<std::size_t>(uf.find(v));
    if (label_of_root[root] < 0) label_of_root[root] = g.num_components++;
    const int label = label_of_root[root];
    if (v < num_demand) {
      g.demand_component[static_cast<std::size_t>(v)] = label;
    } else {
      g.supply_component[static_cast<std::size_t>(v - num_demand)] = label;
    }
  }
  return g;
}

SupportGraph support_graph(const ProblemInstance& inst, const Assignment& x) {
  return connected_components(inst.num_demand(), inst.num_supply(), x.support());
}

bool is_extreme_point(const ProblemInstance& inst, const Assignment& x) {
  if (auto why = assignment_violation(inst, x)) {
    throw Error(ErrorCode::NotFeasiblePoint, *why);
  }
  return support_graph(inst, x).is_forest();
}

namespace {

struct FlowSolution {
  Rational value;
  Assignment point;
};

FlowSolution solve_transport_flow(const ProblemInstance& inst, unsigned variant) {
  const int m = inst.num_demand();
  const int n = inst.num_supply();
  const int source = 0;
  const int sink = m + n + 1;
  detail::MaxFlow flow(m + n + 2);
  const Rational unbounded = inst.total();

  // Rotating the order in which supplies and their arcs are registered
  // changes which shortest augmenting paths are found first.
  std::vector<int> supply_order(static_cast<std::size_t>(n));
  std::iota(supply_order.begin(), supply_order.end(), 1);
  if (n > 0) {
    std::rotate(supply_order.begin(), supply_order.begin() + static_cast<long>(variant % n),
                supply_order.end());
  }
  if ((variant / std::max(n, 1)) % 2 == 1) std::reverse(supply_order.begin(), supply_order.end());

  for (int j : supply_order) flow.add_arc(source, j, inst.supply(j));
  std::vector<std::pair<Edge, int>> edge_arcs;
  for (int j : supply_order) {
    auto demands = inst.demands_of(j);
    if (variant % 3 == 2) std::reverse(demands.begin(), demands.end());
    for (int i : demands) {
      edge_arcs.emplace_back(Edge{i, j}, flow.add_arc(j, n + i, unbounded));
    }
  }
  for (int i = 1; i <= m; ++i) flow.add_arc(n + i, sink, inst.demand(i));

  FlowSolution out;
  out.value = flow.solve(source, sink);
  for (const auto& [e, arc] : edge_arcs) {
    if (sgn(flow.flow(arc)) > 0) out.point.set(e, flow.flow(arc));
  }
  return out;
}

}  // namespace

bool is_feasible(const ProblemInstance& inst) {
  return solve_transport_flow(inst, 0).value == inst.total();
}

Assignment find_feasible_point(const ProblemInstance& inst, unsigned variant) {
  auto sol = solve_transport_flow(inst, variant);
  if (sol.value != inst.total()) {
    throw Error(ErrorCode::Infeasible, "transportation polytope is empty",
                "max flow " + format_rational(sol.value) + " < " + format_rational(inst.total()));
  }
  return std::move(sol.point);
}

Assignment greedy_extreme_point(std::span<const Rational> demand, std::span<const Rational> supply,
                                const GreedyOrder& order) {
  if (sum(demand) != sum(supply)) {
    throw Error(ErrorCode::UnbalancedTotals, "greedy extreme point needs equal totals");
  }
  std::vector<Rational> rd(demand.begin(), demand.end());
  std::vector<Rational> rs(supply.begin(), supply.end());
  for (const auto& v : rd) {
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeRate, "negative demand", format_rational(v));
  }
  for (const auto& v : rs) {
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeRate, "negative supply", format_rational(v));
  }
  std::vector<bool> demand_open(rd.size(), true);
  std::vector<bool> supply_open(rs.size(), true);
  std::size_t open_demands = rd.size();
  std::size_t open_supplies = rs.size();

  Assignment x;
  auto take = [&](int i, int j) {
    auto& a = rd[static_cast<std::size_t>(i - 1)];
    auto& b = rs[static_cast<std::size_t>(j - 1)];
    const Rational amount = a < b ? a : b;
    x.add(Edge{i, j}, amount);
    const bool close_i = a <= b;
    const bool close_j = a >= b;
    a -= amount;
    b -= amount;
    if (close_i) {
      demand_open[static_cast<std::size_t>(i - 1)] = false;
      --open_demands;
    }
    if (close_j) {
      supply_open[static_cast<std::size_t>(j - 1)] = false;
      --open_supplies;
    }
  };

  for (const Edge& e : order.choices) {
    if (open_demands == 0 || open_supplies == 0) break;
    if (e.demand < 1 || e.demand > static_cast<int>(rd.size()) || e.supply < 1 ||
        e.supply > static_cast<int>(rs.size())) {
      throw Error(ErrorCode::EdgeOutOfRange, "greedy choice out of range", to_string(e));
    }
    if (!demand_open[static_cast<std::size_t>(e.demand - 1)] ||
        !supply_open[static_cast<std::size_t>(e.supply - 1)]) {
      throw Error(ErrorCode::InvalidArgument, "greedy choice uses a retired vertex", to_string(e));
    }
    take(e.demand, e.supply);
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (open_demands > 0 && open_supplies > 0) {
    while (!demand_open[i]) ++i;
    while (!supply_open[j]) ++j;
    take(static_cast<int>(i + 1), static_cast<int>(j + 1));
  }
  return x;
}

Rational gcd_combined(std::span<const Rational> demand, std::span<const Rational> supply) {
  std::vector<Rational> all(demand.begin(), demand.end());
  all.insert(all.end(), supply.begin(), supply.end());
  return rational_gcd(all);
}

}  // namespace flexgraph
