#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flexgraph/instance.hpp"

namespace flexgraph {

/// Stateless generator: every draw is a hash of (seed, replication, step,
/// index, stream), so results do not depend on evaluation order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replication) : seed_(seed), replication_(replication) {}

  std::uint64_t bits(std::uint64_t step, std::uint64_t index, std::uint64_t stream) const;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t step, std::uint64_t index, std::uint64_t stream) const;
  /// Uniform on {0, ..., count - 1}.
  std::size_t below(std::size_t count, std::uint64_t step, std::uint64_t index,
                    std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t replication_;
};

/// Independent two-point arrivals: queue i receives c_i jobs with
/// probability (1 - eps) nu_i / c_i and none otherwise.
struct ArrivalModel {
  double eps = 0.0;
  std::vector<std::int64_t> levels;
  std::vector<double> probabilities;
  std::vector<double> means;
  std::vector<double> variances;
  /// Variances in the eps -> 0 limit: c_i nu_i - nu_i^2.
  std::vector<double> limit_variances;

  std::int64_t bound() const;

  /// c_i = max(1, ceil(2 nu_i)) unless `level` overrides it. Throws
  /// InvalidEpsilon for eps outside (0, 1) and InvalidModel when some
  /// c_i <= nu_i, which would leave no mass at zero in the limit.
  static ArrivalModel two_point(std::span<const Rational> demand, double eps,
                                std::optional<std::int64_t> level = std::nullopt);
};

/// Every server j gives its whole capacity mu_j to a longest compatible
/// queue, breaking ties uniformly with `rng` at `step`. Returns the offered
/// service per queue. Throws IsolatedServer.
std::vector<std::int64_t> maxweight_schedule(std::span<const std::int64_t> q,
                                             std::span<const std::int64_t> mu,
                                             const ProblemInstance& inst, const CounterRng& rng,
                                             std::uint64_t step);

struct StepResult {
  std::vector<std::int64_t> q;
  std::vector<std::int64_t> unused;
};

/// q' = max(q + a - s, 0) and u = q' - (q + a - s), with u >= 0 and
/// u_i q'_i = 0 checked.
StepResult step(std::span<const std::int64_t> q, std::span<const std::int64_t> a,
                std::span<const std::int64_t> s);

struct SimConfig {
  double eps = 0.1;
  std::int64_t horizon = 1'000'000;
  /// Defaults to a tenth of the horizon.
  std::optional<std::int64_t> warmup;
  std::uint64_t seed = 0;
  int replications = 5;
  std::optional<std::int64_t> arrival_level;
};

/// Post-warmup time averages of one replication.
struct ReplicationSummary {
  std::vector<double> mean_queue;
  double weighted_sum = 0.0;  // sum_l (1/|I_l|) nu(I_l) E[q(I_l)]
  double perp_norm = 0.0;     // E ||q - q_par||
  double norm = 0.0;          // E ||q||
  std::int64_t samples = 0;
};

struct SimStats {
  SimConfig config;
  std::int64_t warmup = 0;
  ArrivalModel model;
  std::vector<ReplicationSummary> replications;

  std::vector<double> mean_queue;  // pooled with equal weights
  std::vector<double> queue_se;
  double total_queue = 0.0;
  double total_queue_se = 0.0;
  double lhs = 0.0;  // eps * weighted_sum
  double lhs_se = 0.0;
  double rhs = 0.0;  // sum_l (1/|I_l|) sum sigma_i^2 / 2, limit variances
  double ssc_ratio = 0.0;
  double ssc_ratio_se = 0.0;
};

/// Runs the MaxWeight chain, one thread per replication. Needs integer
/// supplies (InvalidModel). Throws InvalidEpsilon, IsolatedServer.
SimStats simulate(const ProblemInstance& inst, const SimConfig& config);

struct HeavyTrafficRow {
  double eps = 0.0;
  double lhs = 0.0;
  double lhs_se = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double ratio_se = 0.0;
  SimStats stats;
};

/// One simulation per eps; config.eps is ignored.
std::vector<HeavyTrafficRow> heavy_traffic_check(const ProblemInstance& inst,
                                                 const std::vector<double>& eps_values,
                                                 const SimConfig& config);

struct SscEstimate {
  double ratio = 0.0;
  double se = 0.0;
};

/// E||q - q_par|| / E||q||, with q_par the projection onto the span of the
/// CRP component indicators.
SscEstimate ssc_ratio(const ProblemInstance& inst, const SimConfig& config);

}  // namespace flexgraph
