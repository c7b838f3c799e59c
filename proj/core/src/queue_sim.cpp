#include "flexgraph/queue_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <exception>
#include <thread>
#include <tuple>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"

namespace flexgraph {
namespace {

__extension__ using Wide = unsigned __int128;

constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t step, std::uint64_t index, std::uint64_t stream) const {
  return mix(seed_ ^ mix(replication_ ^ mix(step ^ mix((index << 2) | (stream & 3)))));
}

double CounterRng::uniform(std::uint64_t step, std::uint64_t index, std::uint64_t stream) const {
  return static_cast<double>(bits(step, index, stream) >> 11) * 0x1.0p-53;
}

std::size_t CounterRng::below(std::size_t count, std::uint64_t step, std::uint64_t index,
                              std::uint64_t stream) const {
  const auto wide = static_cast<Wide>(bits(step, index, stream)) * count;
  return static_cast<std::size_t>(wide >> 64);
}

std::int64_t ArrivalModel::bound() const {
  return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
}

ArrivalModel ArrivalModel::two_point(std::span<const Rational> demand, double eps,
                                     std::optional<std::int64_t> level) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::InvalidEpsilon, "eps must lie in (0, 1)", std::to_string(eps));
  }
  ArrivalModel model;
  model.eps = eps;
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const Rational& nu = demand[i];
    std::int64_t c = 0;
    if (level) {
      c = *level;
    } else {
      const Rational twice = 2 * nu;
      mpz_class up;
      mpz_cdiv_q(up.get_mpz_t(), twice.get_num_mpz_t(), twice.get_den_mpz_t());
      c = std::max<std::int64_t>(1, up.get_si());
    }
    if (sgn(nu) > 0 && Rational(c) <= nu) {
      throw Error(ErrorCode::InvalidModel, "arrival level must exceed the demand rate",
                  "queue " + std::to_string(i + 1) + ": " + std::to_string(c) + " <= " +
                      format_rational(nu));
    }
    const double rate = to_double(nu);
    const double lambda = (1.0 - eps) * rate;
    const double p = lambda / static_cast<double>(c);
    model.levels.push_back(c);
    model.probabilities.push_back(p);
    model.means.push_back(lambda);
    model.variances.push_back(static_cast<double>(c) * lambda - lambda * lambda);
    model.limit_variances.push_back(static_cast<double>(c) * rate - rate * rate);
  }
  return model;
}

namespace {

void schedule_into(std::span<const std::int64_t> q, std::span<const std::int64_t> mu,
                   const ProblemInstance& inst, const CounterRng& rng, std::uint64_t step,
                   std::vector<int>& ties, std::span<std::int64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (int j = 1; j <= inst.num_supply(); ++j) {
    const auto& queues = inst.demands_of(j);
    if (queues.empty()) {
      throw Error(ErrorCode::IsolatedServer, "server has no compatible queue", std::to_string(j));
    }
    std::int64_t top = -1;
    ties.clear();
    for (int i : queues) {
      const std::int64_t v = q[static_cast<std::size_t>(i - 1)];
      if (v > top) {
        top = v;
        ties.clear();
      }
      if (v == top) ties.push_back(i);
    }
    const int chosen = ties.size() == 1
                           ? ties.front()
                           : ties[rng.below(ties.size(), step, static_cast<std::uint64_t>(j), 1)];
    out[static_cast<std::size_t>(chosen - 1)] += mu[static_cast<std::size_t>(j - 1)];
  }
}

std::vector<std::int64_t> integer_supplies(const ProblemInstance& inst) {
  std::vector<std::int64_t> mu;
  for (int j = 1; j <= inst.num_supply(); ++j) {
    const Rational& v = inst.supply(j);
    if (!is_integer(v) || !v.get_num().fits_slong_p()) {
      throw Error(ErrorCode::InvalidModel, "the simulator needs integer service rates",
                  format_rational(v));
    }
    mu.push_back(v.get_num().get_si());
  }
  return mu;
}

}  // namespace

std::vector<std::int64_t> maxweight_schedule(std::span<const std::int64_t> q,
                                             std::span<const std::int64_t> mu,
                                             const ProblemInstance& inst, const CounterRng& rng,
                                             std::uint64_t step) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(inst.num_demand()), 0);
  std::vector<int> ties;
  schedule_into(q, mu, inst, rng, step, ties, out);
  return out;
}

StepResult step(std::span<const std::int64_t> q, std::span<const std::int64_t> a,
                std::span<const std::int64_t> s) {
  if (q.size() != a.size() || q.size() != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "queue, arrival and service vectors differ in length");
  }
  StepResult r{std::vector<std::int64_t>(q.size()), std::vector<std::int64_t>(q.size())};
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::int64_t raw = q[i] + a[i] - s[i];
    r.q[i] = std::max<std::int64_t>(raw, 0);
    r.unused[i] = r.q[i] - raw;
    if (r.unused[i] < 0 || r.unused[i] * r.q[i] != 0) {
      throw Error(ErrorCode::InvariantViolation, "unused service complementarity failed",
                  std::to_string(i + 1));
    }
  }
  return r;
}

namespace {

struct Layout {
  std::vector<std::vector<int>> groups;  // 0-based demand indices per component
  std::vector<double> group_weight;      // nu(I_l) / |I_l|
};

Layout layout_of(const ProblemInstance& inst) {
  const auto decomp = crp_decomposition(inst);
  Layout layout;
  for (const auto& comp : decomp.components) {
    if (comp.demands.empty()) continue;
    std::vector<int> members;
    Rational mass;
    for (int i : comp.demands) {
      members.push_back(i - 1);
      mass += inst.demand(i);
    }
    layout.group_weight.push_back(to_double(mass) / static_cast<double>(members.size()));
    layout.groups.push_back(std::move(members));
  }
  return layout;
}

ReplicationSummary run_replication(const ProblemInstance& inst, const std::vector<std::int64_t>& mu,
                                   const ArrivalModel& model, const Layout& layout,
                                   const SimConfig& config, std::int64_t warmup, int replication) {
  const auto m = static_cast<std::size_t>(inst.num_demand());
  const CounterRng rng(config.seed, static_cast<std::uint64_t>(replication));
  std::vector<std::int64_t> q(m, 0);
  std::vector<std::int64_t> s(m, 0);
  std::vector<int> ties;
  std::vector<double> q_sum(m, 0.0);
  std::vector<double> group_sum(layout.groups.size(), 0.0);
  double perp_sum = 0.0;
  double norm_sum = 0.0;

  for (std::int64_t k = 0; k < config.horizon; ++k) {
    const auto t = static_cast<std::uint64_t>(k);
    if (k >= warmup) {
      double norm2 = 0.0;
      double perp2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto v = static_cast<double>(q[i]);
        q_sum[i] += v;
        norm2 += v * v;
      }
      for (std::size_t l = 0; l < layout.groups.size(); ++l) {
        double total = 0.0;
        for (int i : layout.groups[l]) total += static_cast<double>(q[static_cast<std::size_t>(i)]);
        group_sum[l] += total;
        const double mean = total / static_cast<double>(layout.groups[l].size());
        for (int i : layout.groups[l]) {
          const double d = static_cast<double>(q[static_cast<std::size_t>(i)]) - mean;
          perp2 += d * d;
        }
      }
      norm_sum += std::sqrt(norm2);
      perp_sum += std::sqrt(perp2);
    }
    schedule_into(q, mu, inst, rng, t, ties, s);
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t a =
          rng.uniform(t, static_cast<std::uint64_t>(i), 0) < model.probabilities[i] ? model.levels[i] : 0;
      q[i] = std::max<std::int64_t>(q[i] + a - s[i], 0);
    }
  }

  ReplicationSummary out;
  out.samples = config.horizon - warmup;
  const auto n = static_cast<double>(std::max<std::int64_t>(out.samples, 1));
  for (std::size_t i = 0; i < m; ++i) out.mean_queue.push_back(q_sum[i] / n);
  for (std::size_t l = 0; l < layout.groups.size(); ++l) {
    out.weighted_sum += layout.group_weight[l] * group_sum[l] / n;
  }
  out.perp_norm = perp_sum / n;
  out.norm = norm_sum / n;
  return out;
}

// Mean and standard error of the mean, equal weights.
std::pair<double, double> pooled(const std::vector<double>& values) {
  const auto r = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= r;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (r - 1.0) / r)};
}

}  // namespace

SimStats simulate(const ProblemInstance& inst, const SimConfig& config) {
  if (!(config.eps > 0.0 && config.eps < 1.0)) {
    throw Error(ErrorCode::InvalidEpsilon, "eps must lie in (0, 1)", std::to_string(config.eps));
  }
  if (config.horizon < 1 || config.replications < 1) {
    throw Error(ErrorCode::InvalidArgument, "horizon and replications must be positive");
  }
  const std::int64_t warmup = config.warmup.value_or(config.horizon / 10);
  if (warmup < 0 || warmup >= config.horizon) {
    throw Error(ErrorCode::InvalidArgument, "warmup must lie in [0, horizon)", std::to_string(warmup));
  }
  const auto mu = integer_supplies(inst);
  for (int j = 1; j <= inst.num_supply(); ++j) {
    if (inst.demands_of(j).empty()) {
      throw Error(ErrorCode::IsolatedServer, "server has no compatible queue", std::to_string(j));
    }
  }
  SimStats stats;
  stats.config = config;
  stats.warmup = warmup;
  stats.model = ArrivalModel::two_point(inst.demands(), config.eps, config.arrival_level);
  const Layout layout = layout_of(inst);

  stats.replications.resize(static_cast<std::size_t>(config.replications));
  const unsigned width = std::max(1U, std::thread::hardware_concurrency());
  for (int start = 0; start < config.replications; start += static_cast<int>(width)) {
    const int stop = std::min(config.replications, start + static_cast<int>(width));
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(stop - start));
    for (int r = start; r < stop; ++r) {
      workers.emplace_back([&, r] {
        try {
          stats.replications[static_cast<std::size_t>(r)] =
              run_replication(inst, mu, stats.model, layout, config, warmup, r);
        } catch (...) {
          failures[static_cast<std::size_t>(r - start)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  const auto m = static_cast<std::size_t>(inst.num_demand());
  std::vector<double> totals;
  std::vector<double> lhs;
  std::vector<double> ratios;
  double perp = 0.0;
  double norm = 0.0;
  for (const auto& rep : stats.replications) {
    double total = 0.0;
    for (double v : rep.mean_queue) total += v;
    totals.push_back(total);
    lhs.push_back(config.eps * rep.weighted_sum);
    ratios.push_back(rep.norm > 0.0 ? rep.perp_norm / rep.norm : 0.0);
    perp += rep.perp_norm;
    norm += rep.norm;
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> column;
    for (const auto& rep : stats.replications) column.push_back(rep.mean_queue[i]);
    const auto [mean, se] = pooled(column);
    stats.mean_queue.push_back(mean);
    stats.queue_se.push_back(se);
  }
  std::tie(stats.total_queue, stats.total_queue_se) = pooled(totals);
  std::tie(stats.lhs, stats.lhs_se) = pooled(lhs);
  stats.ssc_ratio = norm > 0.0 ? perp / norm : 0.0;
  stats.ssc_ratio_se = pooled(ratios).second;
  for (const auto& members : layout.groups) {
    double var = 0.0;
    for (int i : members) var += stats.model.limit_variances[static_cast<std::size_t>(i)];
    stats.rhs += var / 2.0 / static_cast<double>(members.size());
  }
  return stats;
}

std::vector<HeavyTrafficRow> heavy_traffic_check(const ProblemInstance& inst,
                                                 const std::vector<double>& eps_values,
                                                 const SimConfig& config) {
  std::vector<HeavyTrafficRow> rows;
  for (double eps : eps_values) {
    SimConfig c = config;
    c.eps = eps;
    HeavyTrafficRow row;
    row.eps = eps;
    row.stats = simulate(inst, c);
    row.lhs = row.stats.lhs;
    row.lhs_se = row.stats.lhs_se;
    row.rhs = row.stats.rhs;
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    row.ratio_se = row.rhs > 0.0 ? row.lhs_se / row.rhs : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

SscEstimate ssc_ratio(const ProblemInstance& inst, const SimConfig& config) {
  const auto stats = simulate(inst, config);
  return SscEstimate{stats.ssc_ratio, stats.ssc_ratio_se};
}

}  // namespace flexgraph
