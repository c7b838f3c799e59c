#include "flexgraph/planning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "flexgraph/augmentation.hpp"
#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"

namespace flexgraph {

Objective Objective::sum() { return Objective{}; }

Objective Objective::final_value() {
  Objective o;
  o.kind_ = Kind::Final;
  return o;
}

Objective Objective::from_tables(std::vector<std::vector<double>> tables) {
  for (std::size_t s = 0; s < tables.size(); ++s) {
    if (tables[s].empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty objective table", "step " + std::to_string(s + 1));
    }
    for (std::size_t v = 1; v < tables[s].size(); ++v) {
      if (tables[s][v] < tables[s][v - 1]) {
        throw Error(ErrorCode::InvalidArgument, "objective table must be non-decreasing",
                    "step " + std::to_string(s + 1));
      }
    }
  }
  Objective o;
  o.kind_ = Kind::Tables;
  o.tables_ = std::move(tables);
  return o;
}

std::string Objective::name() const {
  switch (kind_) {
    case Kind::Sum:
      return "sum";
    case Kind::Final:
      return "final";
    case Kind::Tables:
      return "tables";
  }
  return "sum";
}

double Objective::cost(int step, int horizon, int erp) const {
  switch (kind_) {
    case Kind::Sum:
      return erp;
    case Kind::Final:
      return step == horizon ? erp : 0.0;
    case Kind::Tables:
      break;
  }
  if (step < 1 || static_cast<std::size_t>(step) > tables_.size()) {
    throw Error(ErrorCode::InvalidArgument, "no objective table for step", std::to_string(step));
  }
  const auto& row = tables_[static_cast<std::size_t>(step - 1)];
  if (erp < 1 || static_cast<std::size_t>(erp) > row.size()) {
    throw Error(ErrorCode::InvalidArgument, "objective table too short for ERP value",
                std::to_string(erp));
  }
  return row[static_cast<std::size_t>(erp - 1)];
}

bool valid_cycle_steps(int eta, int horizon, const std::vector<int>& k) {
  if (eta < 1 || horizon < 0) return false;
  int prev = 0;
  for (std::size_t idx = 0; idx < k.size(); ++idx) {
    const int l = static_cast<int>(idx) + 1;
    if (k[idx] - prev < 2 || k[idx] > eta + l - 1 || k[idx] > horizon) return false;
    prev = k[idx];
  }
  const int p = static_cast<int>(k.size());
  const int last = p == 0 ? eta : eta - k.back() + p;
  return last == 1 || horizon <= eta + p - 1;
}

std::vector<int> induction_trajectory(int eta, int horizon, const std::vector<int>& k) {
  std::vector<int> out;
  int value = eta;
  std::size_t next = 0;
  for (int s = 1; s <= horizon; ++s) {
    if (next < k.size() && k[next] == s) {
      ++next;
      value = eta - s + static_cast<int>(next);
    }
    out.push_back(value);
  }
  return out;
}

namespace {

std::optional<Edge> smallest_absent(const EdgeSet& edges, int m, int n) {
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (!edges.contains(Edge{i, j})) return Edge{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace

Schedule structured_schedule(int eta, int horizon, const std::vector<int>& k) {
  if (!valid_cycle_steps(eta, horizon, k)) {
    std::string text;
    for (int v : k) text += (text.empty() ? "" : ",") + std::to_string(v);
    throw Error(ErrorCode::InvalidK, "cycle steps outside the admissible family",
                "eta=" + std::to_string(eta) + " K=" + std::to_string(horizon) + " k=(" + text + ")");
  }
  Schedule s;
  s.eta = eta;
  s.horizon = horizon;
  s.cycle_steps = k;

  EdgeSet used;
  for (int a = 1; a <= eta; ++a) used.insert(Edge{a, a});
  const auto values = induction_trajectory(eta, horizon, k);
  int closed = 0;
  int previous_cycle = 0;
  for (int step = 1; step <= horizon; ++step) {
    std::optional<Edge> e;
    const int before = step == 1 ? eta : values[static_cast<std::size_t>(step - 2)];
    if (static_cast<std::size_t>(closed) < k.size() && k[static_cast<std::size_t>(closed)] == step) {
      ++closed;
      e = Edge{step - closed + 1, previous_cycle - closed + 2};
      previous_cycle = step;
    } else if (before == 1) {
      e = smallest_absent(used, eta, eta);
    } else {
      e = Edge{step - closed, step - closed + 1};
    }
    if (e) used.insert(*e);
    s.edges.push_back(e);
  }
  return s;
}

ProblemInstance diagonal_instance(int eta) {
  if (eta < 1) throw Error(ErrorCode::InvalidArgument, "eta must be positive", std::to_string(eta));
  std::vector<Edge> edges;
  for (int a = 1; a <= eta; ++a) edges.push_back(Edge{a, a});
  std::vector<Rational> ones(static_cast<std::size_t>(eta), Rational(1));
  return ProblemInstance::create(ones, ones, edges);
}

std::vector<std::optional<Edge>> realize(const ProblemInstance& inst, const Schedule& schedule) {
  const auto decomp = crp_decomposition(inst);
  if (!decomp.redundant_edges.empty() || decomp.erp_number() != schedule.eta) {
    throw Error(ErrorCode::InvalidArgument,
                "schedule needs a redundant-edge-free graph with eta components",
                std::to_string(decomp.erp_number()));
  }
  EdgeSet current = inst.edges();
  std::vector<std::optional<Edge>> out;
  const auto values = induction_trajectory(schedule.eta, schedule.horizon, schedule.cycle_steps);
  for (int step = 1; step <= schedule.horizon; ++step) {
    const int before = step == 1 ? schedule.eta : values[static_cast<std::size_t>(step - 2)];
    const bool is_cycle = std::find(schedule.cycle_steps.begin(), schedule.cycle_steps.end(), step) !=
                          schedule.cycle_steps.end();
    std::optional<Edge> e;
    if (before == 1 && !is_cycle) {
      e = smallest_absent(current, inst.num_demand(), inst.num_supply());
    } else {
      const Edge& c = *schedule.edges[static_cast<std::size_t>(step - 1)];
      const auto& from = decomp.components[static_cast<std::size_t>(c.demand - 1)];
      const auto& to = decomp.components[static_cast<std::size_t>(c.supply - 1)];
      e = Edge{from.demands.front(), to.supplies.front()};
    }
    if (e) current.insert(*e);
    out.push_back(e);
  }
  return out;
}

std::vector<int> erp_trajectory(const ProblemInstance& inst,
                                const std::vector<std::optional<Edge>>& edges) {
  std::vector<int> out;
  ProblemInstance current = inst;
  int erp = crp_decomposition(inst).erp_number();
  for (const auto& e : edges) {
    if (e) {
      const auto effect = add_edge_effect(current, *e);
      EdgeSet grown = current.edges();
      grown.insert(*e);
      current = current.with_edges(grown);
      erp = crp_decomposition(current).erp_number();
      if (erp != effect.new_erp) {
        throw Error(ErrorCode::InvariantViolation, "incremental ERP disagrees with recomputation",
                    to_string(*e) + ": " + std::to_string(effect.new_erp) + " vs " + std::to_string(erp));
      }
    }
    out.push_back(erp);
  }
  return out;
}

std::vector<int> erp_trajectory(const ProblemInstance& inst, const std::vector<Edge>& edges) {
  return erp_trajectory(inst, std::vector<std::optional<Edge>>(edges.begin(), edges.end()));
}

double objective_value(const Objective& objective, const std::vector<int>& trajectory) {
  double total = 0.0;
  const int horizon = static_cast<int>(trajectory.size());
  for (int s = 1; s <= horizon; ++s) {
    total += objective.cost(s, horizon, trajectory[static_cast<std::size_t>(s - 1)]);
  }
  return total;
}

namespace {

struct Candidate {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> k;
  bool set = false;
};

bool improves(double cost, const std::vector<int>& k, const Candidate& best) {
  if (!best.set) return true;
  if (cost != best.cost) return cost < best.cost;
  if (k.size() != best.k.size()) return k.size() < best.k.size();
  return k < best.k;
}

// mpq_class(p, q) does not reduce; GMP needs canonical operands.
Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational closed_form_g(int eta, int horizon, int p) {
  const Rational a = ratio(eta - 1, p) + ratio(1, 2);
  const Rational b = ratio(horizon, p + 1);
  return (b < a ? b : a) + ratio(p, 2);
}

Rational floor_of(const Rational& v) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return Rational(out);
}

// Only p whose relaxed gaps g - i + 1 stay positive are scored; past that
// the -p^3 term makes the expression meaningless.
std::vector<int> closed_form_sum(int eta, int horizon) {
  int best_p = 1;
  std::optional<Rational> best_value;
  for (int p = 1; p <= eta; ++p) {
    const Rational g = closed_form_g(eta, horizon, p);
    if (p > 1 && g <= p - 1) continue;
    const bool capped = ratio(horizon, p + 1) < ratio(eta - 1, p) + ratio(1, 2);
    const Rational frac = g - floor_of(g);
    const Rational value = Rational(p + (capped ? 1 : 0)) * (g * g + frac - frac * frac) -
                           ratio(p * (p + 1) * (2 * p + 1), 6);
    if (!best_value || value < *best_value) {
      best_p = p;
      best_value = value;
    }
  }
  const Rational g = closed_form_g(eta, horizon, best_p);
  std::vector<int> k;
  for (int i = 1; i <= best_p; ++i) {
    k.push_back(static_cast<int>(floor_of(Rational(i) * g - ratio(i * (i - 1), 2)).get_num().get_si()));
  }
  return k;
}

}  // namespace

PlanResult plan_schedule(int eta, int horizon, const Objective& objective) {
  if (eta < 1) throw Error(ErrorCode::InvalidArgument, "eta must be positive", std::to_string(eta));
  if (horizon < 0) {
    throw Error(ErrorCode::InvalidArgument, "budget must be nonnegative", std::to_string(horizon));
  }
  const auto K = static_cast<std::size_t>(horizon);
  const auto H = static_cast<std::size_t>(eta);

  // prefix[v][s] = f_1(v) + ... + f_s(v)
  std::vector<std::vector<double>> prefix(H + 1, std::vector<double>(K + 1, 0.0));
  for (int v = 1; v <= eta; ++v) {
    for (int s = 1; s <= horizon; ++s) {
      prefix[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] =
          prefix[static_cast<std::size_t>(v)][static_cast<std::size_t>(s - 1)] +
          objective.cost(s, horizon, v);
    }
  }
  auto segment = [&](int from, int to, int v) {
    if (to < from) return 0.0;
    const auto& row = prefix[static_cast<std::size_t>(v)];
    return row[static_cast<std::size_t>(to)] - row[static_cast<std::size_t>(from - 1)];
  };

  Candidate best;
  if (horizon <= eta - 1 || eta == 1) {
    best = Candidate{segment(1, horizon, eta), {}, true};
  }

  // layer[k] = cheapest prefix whose latest cycle step is k.
  std::vector<Candidate> layer(K + 1);
  layer[0] = Candidate{0.0, {}, true};
  for (int l = 1; l <= eta - 1; ++l) {
    std::vector<Candidate> next(K + 1);
    for (int k = 2; k <= std::min(horizon, eta + l - 1); ++k) {
      for (int prev = 0; prev <= k - 2; ++prev) {
        const Candidate& base = layer[static_cast<std::size_t>(prev)];
        if (!base.set) continue;
        const int held = eta - prev + (l - 1);
        const double cost = base.cost + segment(prev + 1, k - 1, held) +
                            objective.cost(k, horizon, eta - k + l);
        auto ks = base.k;
        ks.push_back(k);
        if (improves(cost, ks, next[static_cast<std::size_t>(k)])) {
          next[static_cast<std::size_t>(k)] = Candidate{cost, std::move(ks), true};
        }
      }
    }
    for (int k = 2; k <= horizon; ++k) {
      const Candidate& c = next[static_cast<std::size_t>(k)];
      if (!c.set) continue;
      const int held = eta - k + l;
      if (held != 1 && horizon > eta + l - 1) continue;
      const double total = c.cost + segment(k + 1, horizon, held);
      if (improves(total, c.k, best)) best = Candidate{total, c.k, true};
    }
    layer = std::move(next);
  }

  PlanResult result;
  result.schedule = structured_schedule(eta, horizon, best.k);
  result.trajectory = induction_trajectory(eta, horizon, best.k);
  result.value = objective_value(objective, result.trajectory);

  std::optional<std::vector<int>> formula;
  if (objective.kind() == Objective::Kind::Sum && horizon >= 1) {
    formula = closed_form_sum(eta, horizon);
  } else if (objective.kind() == Objective::Kind::Final && horizon >= 1) {
    formula = std::vector<int>{std::min(eta, horizon)};
  }
  if (formula) {
    ClosedForm cf;
    cf.p = static_cast<int>(formula->size());
    cf.k = *formula;
    cf.valid = valid_cycle_steps(eta, horizon, cf.k);
    if (cf.valid) cf.value = objective_value(objective, induction_trajectory(eta, horizon, cf.k));
    result.discrepancy = !cf.valid || cf.value != result.value;
    result.closed_form = cf;
  }
  return result;
}

SequenceResult optimal_sequence_exhaustive(const ProblemInstance& inst, int horizon,
                                           const Objective& objective, double limit) {
  const auto absent = static_cast<double>(inst.num_demand()) * inst.num_supply() -
                      static_cast<double>(inst.edges().size());
  double count = 1.0;
  for (int s = 0; s < horizon; ++s) count *= std::max(1.0, absent - s);
  if (count > limit) {
    throw Error(ErrorCode::SizeLimitExceeded, "too many edge sequences to enumerate",
                std::to_string(static_cast<long long>(count)));
  }

  SequenceResult best;
  bool found = false;
  std::vector<std::optional<Edge>> path;
  std::vector<int> erps;

  std::function<void(const ProblemInstance&, int)> search = [&](const ProblemInstance& g, int erp) {
    if (static_cast<int>(path.size()) == horizon) {
      const double value = objective_value(objective, erps);
      if (!found || value < best.value || (value == best.value && path < best.edges)) {
        best = SequenceResult{path, erps, value};
        found = true;
      }
      return;
    }
    const auto decomp = crp_decomposition(g);
    const auto dag = crp_graph(decomp);
    bool any = false;
    for (int i = 1; i <= g.num_demand(); ++i) {
      for (int j = 1; j <= g.num_supply(); ++j) {
        const Edge e{i, j};
        if (g.has_edge(e)) continue;
        any = true;
        const auto effect = add_edge_effect(g, decomp, dag, e);
        EdgeSet grown = g.edges();
        grown.insert(e);
        path.push_back(e);
        erps.push_back(effect.new_erp);
        search(g.with_edges(grown), effect.new_erp);
        path.pop_back();
        erps.pop_back();
      }
    }
    if (!any) {
      path.push_back(std::nullopt);
      erps.push_back(erp);
      search(g, erp);
      path.pop_back();
      erps.pop_back();
    }
  };
  search(inst, crp_decomposition(inst).erp_number());
  return best;
}

namespace {

std::vector<double> cumulative(const Objective& objective, const std::vector<int>& trajectory) {
  std::vector<double> out;
  double running = 0.0;
  const int horizon = static_cast<int>(trajectory.size());
  for (int s = 1; s <= horizon; ++s) {
    running += objective.cost(s, horizon, trajectory[static_cast<std::size_t>(s - 1)]);
    out.push_back(running);
  }
  return out;
}

}  // namespace

GreedyOptimalReport greedy_vs_optimal_report(const ProblemInstance& inst, int horizon,
                                             const Objective& objective) {
  GreedyOptimalReport report;
  if (horizon <= 0) {
    report.optimal_method = "none";
    return report;
  }

  ProblemInstance g = inst;
  for (int s = 0; s < horizon; ++s) {
    std::optional<Edge> e;
    if (crp_decomposition(g).erp_number() > 1) {
      e = best_single_edge(g).edge;
    } else {
      e = smallest_absent(g.edges(), g.num_demand(), g.num_supply());
    }
    if (e) {
      EdgeSet grown = g.edges();
      grown.insert(*e);
      g = g.with_edges(grown);
    }
    report.greedy.edges.push_back(e);
  }
  report.greedy.trajectory = erp_trajectory(inst, report.greedy.edges);
  report.greedy.value = objective_value(objective, report.greedy.trajectory);

  const auto decomp = crp_decomposition(inst);
  if (decomp.redundant_edges.empty()) {
    const auto plan = plan_schedule(decomp.erp_number(), horizon, objective);
    report.optimal.edges = realize(inst, plan.schedule);
    report.optimal.trajectory = erp_trajectory(inst, report.optimal.edges);
    report.optimal.value = objective_value(objective, report.optimal.trajectory);
    report.optimal_method = "structured";
  } else {
    report.optimal = optimal_sequence_exhaustive(inst, horizon, objective);
    report.optimal_method = "exhaustive";
  }
  report.greedy_cumulative = cumulative(objective, report.greedy.trajectory);
  report.optimal_cumulative = cumulative(objective, report.optimal.trajectory);
  return report;
}

}  // namespace flexgraph
