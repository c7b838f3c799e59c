#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "flexgraph/augmentation.hpp"
#include "flexgraph/decomposition.hpp"
#include "flexgraph/design.hpp"
#include "flexgraph/error.hpp"
#include "flexgraph/instance.hpp"
#include "flexgraph/io.hpp"
#include "flexgraph/planning.hpp"
#include "flexgraph/queue_sim.hpp"
#include "flexgraph/robustness.hpp"

namespace flexgraph::cli {
namespace {

Json int_list(const std::vector<int>& values) {
  Json out = Json::array();
  for (int v : values) out.push_back(v);
  return out;
}

Json optional_rational(const std::optional<Rational>& value) {
  return value ? Json(format_rational(*value)) : Json(nullptr);
}

Json optional_edges(const std::vector<std::optional<Edge>>& edges) {
  Json out = Json::array();
  for (const auto& e : edges) out.push_back(e ? edge_to_json(*e) : Json(nullptr));
  return out;
}

std::vector<std::optional<Edge>> optional_edges_from(const Json& value) {
  std::vector<std::optional<Edge>> out;
  for (const auto& item : value) {
    if (item.is_null()) {
      out.emplace_back();
    } else {
      out.emplace_back(edge_from_json(item));
    }
  }
  return out;
}

Json document(const char* command) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

Objective parse_objective(const std::string& text) {
  if (text == "sum") return Objective::sum();
  if (text == "final") return Objective::final_value();
  if (text.rfind("file:", 0) == 0) {
    const Json doc = read_json(text.substr(5));
    const Json& rows = doc.is_object() && doc.contains("tables") ? doc["tables"] : doc;
    if (!rows.is_array()) throw Error(ErrorCode::ParseError, "objective tables must be an array");
    std::vector<std::vector<double>> tables;
    for (const auto& row : rows) {
      if (!row.is_array()) throw Error(ErrorCode::ParseError, "objective table rows must be arrays");
      std::vector<double> values;
      for (const auto& v : row) {
        if (!v.is_number()) throw Error(ErrorCode::ParseError, "objective values must be numbers", v.dump());
        values.push_back(v.get<double>());
      }
      tables.push_back(std::move(values));
    }
    return Objective::from_tables(std::move(tables));
  }
  throw Error(ErrorCode::UsageError, "objective must be sum, final or file:<path>", text);
}

Edge parse_edge_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::UsageError, "edge must be written i,j", text);
  try {
    std::size_t used_i = 0;
    std::size_t used_j = 0;
    const std::string left = text.substr(0, comma);
    const std::string right = text.substr(comma + 1);
    const int i = std::stoi(left, &used_i);
    const int j = std::stoi(right, &used_j);
    if (used_i != left.size() || used_j != right.size()) throw std::invalid_argument(text);
    return Edge{i, j};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::UsageError, "edge must be written i,j", text);
  }
}

// ---- document builders -----------------------------------------------------

Json decompose_doc(const ProblemInstance& inst) {
  const auto decomp = crp_decomposition(inst);
  const auto dag = crp_graph(decomp);
  Json doc = document("decompose");
  doc["redundant_edges"] = edges_to_json(decomp.redundant_edges);
  doc["erp_number"] = decomp.erp_number();
  Json comps = Json::array();
  for (const auto& c : decomp.components) {
    Json item;
    item["demands"] = int_list(c.demands);
    item["supplies"] = int_list(c.supplies);
    item["edges"] = edges_to_json(c.edges);
    comps.push_back(std::move(item));
  }
  doc["components"] = std::move(comps);
  Json arcs = Json::array();
  for (const auto& a : dag.arcs()) {
    Json item;
    item["from"] = a.from;
    item["to"] = a.to;
    item["via"] = edge_to_json(a.via);
    arcs.push_back(std::move(item));
  }
  doc["crp_graph"] = std::move(arcs);
  doc["topological_order"] = int_list(dag.topological_order());
  doc["ssc_dimension"] = ssc_basis(decomp).dimension();
  return doc;
}

Json design_doc(const ProblemInstance& inst, int target) {
  const auto result = design_flexibility(inst.demands(), inst.supplies(), target);
  Json doc = document("design");
  doc["target"] = target;
  doc["min_components"] = min_extreme_components(inst.demands(), inst.supplies());
  doc["max_erp"] = max_erp_number(inst.demands(), inst.supplies());
  doc["min_edges"] = min_edges(inst.demands(), inst.supplies(), target);
  doc["edge_count"] = result.edge_count;
  doc["achieved_erp"] = result.achieved_erp;
  doc["used_cycle"] = result.used_cycle;
  doc["edges"] = edges_to_json(result.edges);
  doc["assignment"] = assignment_to_json(result.assignment);
  return doc;
}

Json effect_doc(const EdgeEffect& effect, const char* mode) {
  Json doc = document("augment");
  doc["mode"] = mode;
  doc["edge"] = edge_to_json(effect.edge);
  doc["dag_edge"] = Json::array({effect.dag_edge.from, effect.dag_edge.to});
  doc["cycle_vertices"] = int_list(effect.cycle_vertices);
  doc["old_erp"] = effect.old_erp;
  doc["new_erp"] = effect.new_erp;
  doc["delta"] = effect.delta;
  return doc;
}

Json gap_doc(const ProblemInstance& inst, const std::vector<std::vector<Rational>>& perturbations) {
  const auto report = crp_gap(inst);
  Json doc = document("gap");
  doc["crp_gap"] = optional_rational(report.crp_gap);
  doc["argmin_set"] = int_list(report.argmin_set);
  doc["alt_gap"] = optional_rational(report.alt_gap);
  doc["alt_argmin_set"] = int_list(report.alt_argmin_set);
  doc["redundancy_invariant"] = report.crp_gap ? Json(gap_redundancy_invariance(inst)) : Json(nullptr);
  if (!perturbations.empty()) {
    Json checks = Json::array();
    for (const auto& omega : perturbations) {
      const auto check = check_perturbation(inst, omega);
      Json item;
      Json w = Json::array();
      for (const auto& v : omega) w.push_back(rational_to_json(v));
      item["omega"] = std::move(w);
      item["admissible"] = check.admissible;
      item["reasons"] = check.reasons;
      item["erp_before"] = check.erp_before;
      item["erp_after"] = check.erp_after ? Json(*check.erp_after) : Json(nullptr);
      checks.push_back(std::move(item));
    }
    doc["perturbations"] = std::move(checks);
  }
  return doc;
}

Json plan_doc(int eta, int horizon, const std::string& objective_text) {
  const Objective objective = parse_objective(objective_text);
  const auto plan = plan_schedule(eta, horizon, objective);
  Json doc = document("plan");
  doc["eta"] = eta;
  doc["budget"] = horizon;
  doc["objective"] = objective_text;
  doc["cycle_count"] = plan.schedule.cycle_count();
  doc["cycle_steps"] = int_list(plan.schedule.cycle_steps);
  doc["edges"] = optional_edges(plan.schedule.edges);
  doc["trajectory"] = int_list(plan.trajectory);
  doc["value"] = plan.value;
  if (plan.closed_form) {
    Json cf;
    cf["p"] = plan.closed_form->p;
    cf["k"] = int_list(plan.closed_form->k);
    cf["valid"] = plan.closed_form->valid;
    cf["value"] = plan.closed_form->valid ? Json(plan.closed_form->value) : Json(nullptr);
    doc["closed_form"] = std::move(cf);
    doc["discrepancy"] = plan.discrepancy;
  }
  return doc;
}

Json compare_doc(const ProblemInstance& inst, int horizon, const std::string& objective_text) {
  const Objective objective = parse_objective(objective_text);
  const auto report = greedy_vs_optimal_report(inst, horizon, objective);
  Json doc = document("compare");
  doc["budget"] = horizon;
  doc["objective"] = objective_text;
  doc["optimal_method"] = report.optimal_method;
  auto side = [](const SequenceResult& r, const std::vector<double>& cumulative) {
    Json j;
    j["edges"] = optional_edges(r.edges);
    j["trajectory"] = int_list(r.trajectory);
    j["cumulative"] = cumulative;
    j["value"] = r.value;
    return j;
  };
  doc["greedy"] = side(report.greedy, report.greedy_cumulative);
  doc["optimal"] = side(report.optimal, report.optimal_cumulative);
  return doc;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void simulate_csv(const ProblemInstance& inst, const std::vector<double>& eps_values,
                  const SimConfig& base, std::ostream& out) {
  const int m = inst.num_demand();
  out << "eps";
  for (int i = 1; i <= m; ++i) out << ",q" << i;
  for (int i = 1; i <= m; ++i) out << ",q" << i << "_se";
  out << ",total,total_se,lhs,lhs_se,rhs,ratio,ratio_se,ssc_ratio,ssc_ratio_se\n";
  for (const auto& row : heavy_traffic_check(inst, eps_values, base)) {
    const auto& s = row.stats;
    out << number(row.eps);
    for (double v : s.mean_queue) out << ',' << number(v);
    for (double v : s.queue_se) out << ',' << number(v);
    out << ',' << number(s.total_queue) << ',' << number(s.total_queue_se) << ',' << number(row.lhs)
        << ',' << number(row.lhs_se) << ',' << number(row.rhs) << ',' << number(row.ratio) << ','
        << number(row.ratio_se) << ',' << number(s.ssc_ratio) << ',' << number(s.ssc_ratio_se)
        << '\n';
  }
}

// ---- verify ----------------------------------------------------------------

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

void verify_decompose(const ProblemInstance& inst, const Json& doc, Checker& c) {
  const Json fresh = decompose_doc(inst);
  for (const char* key : {"redundant_edges", "erp_number", "components", "crp_graph"}) {
    c.expect(doc.contains(key) && doc[key] == fresh[key], std::string(key) + " differs from recomputation");
  }
  const auto decomp = crp_decomposition(inst);
  c.expect(crp_graph(decomp).is_acyclic(), "CRP-graph has a cycle");
  for (const auto& comp : decomp.components) {
    const auto piece = subinstance(inst, comp.demands, comp.supplies);
    c.expect(crp_condition(piece), "a component fails the CRP condition");
  }
}

void verify_design(const ProblemInstance& inst, const Json& doc, Checker& c) {
  const int target = doc.at("target").get<int>();
  const EdgeSet edges = edges_from_json(doc.at("edges"));
  const Assignment x = assignment_from_json(doc.at("assignment"));
  const auto designed = ProblemInstance::create(
      std::vector<Rational>(inst.demands().begin(), inst.demands().end()),
      std::vector<Rational>(inst.supplies().begin(), inst.supplies().end()), edges);
  c.expect(!assignment_violation(designed, x), "assignment is not a point of the designed polytope");
  c.expect(x.support() == edges, "edges differ from the assignment support");
  c.expect(crp_decomposition(designed).erp_number() == target, "designed graph misses the target ERP");
  c.expect(static_cast<int>(edges.size()) == min_edges(inst.demands(), inst.supplies(), target),
           "edge count differs from the minimum");
  if (!doc.value("used_cycle", false)) c.expect(is_extreme_point(designed, x), "assignment is not extreme");
}

void verify_gap(const ProblemInstance& inst, const Json& doc, Checker& c) {
  const auto report = crp_gap(inst);
  c.expect(doc.at("crp_gap") == optional_rational(report.crp_gap), "crp_gap differs from recomputation");
  c.expect(doc.at("alt_gap") == optional_rational(report.alt_gap), "alt_gap differs from recomputation");
  if (report.crp_gap) {
    c.expect(sgn(*report.crp_gap) > 0, "gap is not positive");
    c.expect(gap_redundancy_invariance(inst), "gap changes when redundant edges are removed");
  }
}

void verify_augment(const ProblemInstance& inst, const Json& doc, Checker& c) {
  const Edge e = edge_from_json(doc.at("edge"));
  const auto effect = add_edge_effect(inst, e);
  EdgeSet grown = inst.edges();
  grown.insert(e);
  const int scratch = crp_decomposition(inst.with_edges(grown)).erp_number();
  c.expect(doc.at("new_erp").get<int>() == effect.new_erp, "new_erp differs from recomputation");
  c.expect(effect.new_erp == scratch, "incremental ERP differs from a fresh decomposition");
  c.expect(effect.delta <= 0, "adding an edge raised the ERP number");
  if (doc.value("mode", "") == std::string("best")) {
    c.expect(best_single_edge_exhaustive(inst).new_erp == effect.new_erp,
             "sink/source search misses the best edge");
  }
}

void verify_plan(const Json& doc, Checker& c) {
  const int eta = doc.at("eta").get<int>();
  const int horizon = doc.at("budget").get<int>();
  const auto k = doc.at("cycle_steps").get<std::vector<int>>();
  c.expect(valid_cycle_steps(eta, horizon, k), "cycle steps are not admissible");
  if (!c.failures.empty()) return;
  const auto schedule = structured_schedule(eta, horizon, k);
  c.expect(optional_edges(schedule.edges) == doc.at("edges"), "edges differ from the structured schedule");
  const auto realized = erp_trajectory(diagonal_instance(eta), schedule.edges);
  c.expect(realized == induction_trajectory(eta, horizon, k), "trajectory departs from the induction");
  c.expect(doc.at("trajectory").get<std::vector<int>>() == realized, "reported trajectory is wrong");
  const std::string objective = doc.at("objective").get<std::string>();
  if (objective == "sum" || objective == "final") {
    const auto fresh = plan_schedule(eta, horizon, parse_objective(objective));
    c.expect(doc.at("value").get<double>() == fresh.value, "value is not the optimum");
  }
}

void verify_compare(const ProblemInstance& inst, const Json& doc, Checker& c) {
  for (const char* side : {"greedy", "optimal"}) {
    const auto edges = optional_edges_from(doc.at(side).at("edges"));
    const auto trajectory = erp_trajectory(inst, edges);
    c.expect(doc.at(side).at("trajectory").get<std::vector<int>>() == trajectory,
             std::string(side) + " trajectory differs from recomputation");
    c.expect(std::is_sorted(trajectory.rbegin(), trajectory.rend()),
             std::string(side) + " trajectory increases");
  }
  c.expect(doc.at("optimal").at("value").get<double>() <= doc.at("greedy").at("value").get<double>(),
           "optimal plan is worse than greedy");
}

Json verify_doc(const ProblemInstance& inst, const Json& result) {
  if (!result.is_object() || !result.contains("command") || !result["command"].is_string()) {
    throw Error(ErrorCode::ParseError, "result document has no command field");
  }
  const std::string command = result["command"].get<std::string>();
  Checker c;
  try {
    if (command == "validate") {
      c.expect(result.at("feasible").get<bool>() == is_feasible(inst), "feasibility differs");
    } else if (command == "decompose") {
      verify_decompose(inst, result, c);
    } else if (command == "design") {
      verify_design(inst, result, c);
    } else if (command == "gap") {
      verify_gap(inst, result, c);
    } else if (command == "augment") {
      verify_augment(inst, result, c);
    } else if (command == "plan") {
      verify_plan(result, c);
    } else if (command == "compare") {
      verify_compare(inst, result, c);
    } else {
      throw Error(ErrorCode::ParseError, "cannot verify this command", command);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what(), command);
  }
  Json doc = document("verify");
  doc["checked"] = command;
  doc["ok"] = c.failures.empty();
  doc["failures"] = c.failures;
  return doc;
}

void diagnose(std::ostream& err, ErrorCode code, const std::string& message, const std::string& datum) {
  Json diag;
  diag["error"] = std::string(to_string(code));
  diag["message"] = message;
  diag["datum"] = datum;
  err << diag.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flexibility graphs, CRP decompositions and MaxWeight heavy-traffic checks", "flexgraph"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string result_path;
  int erp = 0;
  std::string perturb_path;
  std::string edge_text;
  bool best = false;
  int eta = 0;
  int budget = 0;
  std::string objective = "sum";
  std::string compare_path;
  std::vector<double> eps_values{0.1};
  double horizon = 1e6;
  double warmup = -1;
  int reps = 5;
  std::uint64_t seed = 0;
  std::int64_t arrival_max = 0;

  std::function<int()> action;
  auto emit = [&](const Json& doc) {
    out << doc.dump(2) << '\n';
    return 0;
  };

  auto* validate = app.add_subcommand("validate", "Check an instance and report feasibility");
  validate->add_option("instance", input, "Instance JSON (- for stdin)");
  validate->callback([&] {
    action = [&] {
      const auto inst = read_instance(input);
      Json doc = document("validate");
      doc["demand_types"] = inst.num_demand();
      doc["supply_types"] = inst.num_supply();
      doc["edge_count"] = inst.edges().size();
      doc["feasible"] = is_feasible(inst);
      if (!doc["feasible"].get<bool>()) {
        throw Error(ErrorCode::Infeasible, "transportation polytope is empty");
      }
      doc["crp_condition"] = crp_condition(inst);
      return emit(doc);
    };
  });

  auto* decompose = app.add_subcommand("decompose", "Redundant edges, CRP components and CRP-graph");
  decompose->add_option("instance", input, "Instance JSON (- for stdin)");
  decompose->callback([&] { action = [&] { return emit(decompose_doc(read_instance(input))); }; });

  auto* design = app.add_subcommand("design", "Sparsest graph with a given ERP number (edges ignored)");
  design->add_option("instance", input, "Instance JSON (- for stdin)");
  design->add_option("--erp", erp, "Target ERP number")->required();
  design->callback([&] { action = [&] { return emit(design_doc(read_instance(input), erp)); }; });

  auto* gap = app.add_subcommand("gap", "CRP gap, alternative gap and perturbation checks");
  gap->add_option("instance", input, "Instance JSON (- for stdin)");
  gap->add_option("--perturb", perturb_path, "JSON with \"omega\" or \"perturbations\"");
  gap->callback([&] {
    action = [&] {
      const auto inst = read_instance(input);
      std::vector<std::vector<Rational>> perturbations;
      if (!perturb_path.empty()) {
        const Json doc = read_json(perturb_path);
        auto vec = [](const Json& arr) {
          if (!arr.is_array()) throw Error(ErrorCode::ParseError, "omega must be an array", arr.dump());
          std::vector<Rational> w;
          for (const auto& v : arr) w.push_back(rational_from_json(v));
          return w;
        };
        if (doc.contains("omega")) perturbations.push_back(vec(doc["omega"]));
        if (doc.contains("perturbations")) {
          for (const auto& item : doc["perturbations"]) perturbations.push_back(vec(item));
        }
        if (perturbations.empty()) throw Error(ErrorCode::ParseError, "no perturbation found", perturb_path);
      }
      return emit(gap_doc(inst, perturbations));
    };
  });

  auto* augment = app.add_subcommand("augment", "Effect of adding one edge, or the best such edge");
  augment->add_option("instance", input, "Instance JSON (- for stdin)");
  auto* edge_opt = augment->add_option("--edge", edge_text, "Edge to add, as i,j");
  auto* best_opt = augment->add_flag("--best", best, "Search for the best single edge");
  edge_opt->excludes(best_opt);
  augment->callback([&] {
    action = [&] {
      const auto inst = read_instance(input);
      if (best) return emit(effect_doc(best_single_edge(inst), "best"));
      if (edge_text.empty()) throw Error(ErrorCode::UsageError, "augment needs --edge or --best");
      return emit(effect_doc(add_edge_effect(inst, parse_edge_flag(edge_text)), "edge"));
    };
  });

  auto* plan = app.add_subcommand("plan", "Optimal edge-addition schedule over a budget");
  plan->add_option("--eta", eta, "Initial number of CRP components");
  plan->add_option("--budget", budget, "Number of edges to add")->required();
  plan->add_option("--objective", objective, "sum | final | file:<tables.json>");
  plan->add_option("--compare", compare_path, "Instance for a greedy versus optimal comparison");
  plan->callback([&] {
    action = [&] {
      if (!compare_path.empty()) return emit(compare_doc(read_instance(compare_path), budget, objective));
      if (eta < 1) throw Error(ErrorCode::UsageError, "plan needs --eta >= 1 or --compare");
      return emit(plan_doc(eta, budget, objective));
    };
  });

  auto* sim = app.add_subcommand("simulate", "MaxWeight simulation sweep, CSV output");
  sim->add_option("instance", input, "Instance JSON (- for stdin)");
  sim->add_option("--eps", eps_values, "Heavy-traffic parameters")->delimiter(',');
  sim->add_option("--horizon", horizon, "Time slots per replication");
  sim->add_option("--warmup", warmup, "Discarded slots (default horizon/10)");
  sim->add_option("--reps", reps, "Replications");
  sim->add_option("--seed", seed, "Random seed");
  sim->add_option("--arrival-max", arrival_max, "Arrival batch size for every queue");
  sim->callback([&] {
    action = [&] {
      const auto inst = read_instance(input);
      SimConfig config;
      config.horizon = static_cast<std::int64_t>(std::llround(horizon));
      if (warmup >= 0) config.warmup = static_cast<std::int64_t>(std::llround(warmup));
      config.replications = reps;
      config.seed = seed;
      if (arrival_max > 0) config.arrival_level = arrival_max;
      simulate_csv(inst, eps_values, config, out);
      return 0;
    };
  });

  auto* verify = app.add_subcommand("verify", "Replay a result document against its instance");
  verify->add_option("instance", input, "Instance JSON")->required();
  verify->add_option("result", result_path, "Result JSON")->required();
  verify->callback([&] {
    action = [&] {
      const Json doc = verify_doc(read_instance(input), read_json(result_path));
      out << doc.dump(2) << '\n';
      return doc["ok"].get<bool>() ? 0 : 1;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    diagnose(err, ErrorCode::UsageError, e.what(), "");
    return 2;
  }

  try {
    return action();
  } catch (const Error& e) {
    diagnose(err, e.code(), e.what(), e.datum());
    return is_input_error(e.code()) ? 2 : 1;
  }
}

}  // namespace flexgraph::cli
