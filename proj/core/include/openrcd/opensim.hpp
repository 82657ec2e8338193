// Open-system simulation: each iteration is either a coordinate-descent
// update on a uniformly drawn edge (probability p_U) or the replacement of a
// uniformly drawn agent's cost (probability 1 - p_U). Replaced agents keep
// their estimate, so the iterate stays on the budget hyperplane while the
// constrained minimizer moves.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "openrcd/bounds.hpp"
#include "openrcd/functions.hpp"
#include "openrcd/random.hpp"
#include "openrcd/rcd.hpp"

namespace openrcd {

enum class EventKind : std::uint8_t { initial, update, replacement };

std::string_view to_string(EventKind kind) noexcept;

/// Event process with P(update) = p_update and P(replacement) = 1 - p_update,
/// independent across iterations and of the state.
class EventSchedule {
 public:
  EventSchedule(double p_update, std::uint64_t seed);

  [[nodiscard]] double p_update() const noexcept { return p_update_; }
  [[nodiscard]] double p_replace() const noexcept { return 1.0 - p_update_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] EventProbabilities per_element(std::size_t n) const {
    return event_probabilities(n, p_update_);
  }

  /// Draws the next event kind (update or replacement).
  EventKind draw(Rng& rng) const;

 private:
  double p_update_;
  std::uint64_t seed_;
};

/// Agent estimates plus the current cost roster.
template <ScalarCost F>
struct SystemState {
  std::vector<double> x;
  std::vector<F> roster;
  double budget = 0.0;
};

/// Advances the state by one event. On an update, applies one pair step on a
/// uniformly drawn edge; on a replacement, swaps a uniformly drawn agent's
/// cost for sample(rng) and leaves x untouched. Returns the event and, for
/// replacements, the index of the replaced agent through replaced_agent.
template <ScalarCost F, class Sampler>
EventKind step(SystemState<F>& state, const EventSchedule& schedule, const StepConfig& config,
               Rng& rng, Sampler&& sample, std::size_t* replaced_agent = nullptr) {
  const std::size_t n = state.x.size();
  const EventKind kind = schedule.draw(rng);
  if (kind == EventKind::update) {
    const PairSelection sel = sample_edge(rng, n);
    apply_pair_step<F>(state.x, state.roster, sel, config);
  } else {
    std::uniform_int_distribution<std::size_t> agent(0, n - 1);
    const std::size_t a = agent(rng);
    state.roster[a] = sample(rng);
    if (replaced_agent != nullptr) *replaced_agent = a;
  }
  return kind;
}

enum class InitialState { uniform_budget, minimizer, explicit_vector };
enum class FunctionFamily { quadratic, logcosh_quadratic };

struct ExperimentConfig {
  std::size_t n = 5;
  double alpha = 1.0;
  double beta = 1.2;
  double b = 1.0;
  double p_update = 0.95;
  /// Step size; defaults to 1/beta.
  std::optional<double> h;
  std::size_t horizon = 600;
  std::size_t replications = 10000;
  std::uint64_t seed = 1;
  InitialState initial_state = InitialState::uniform_budget;
  std::vector<double> initial_vector;
  FunctionFamily family = FunctionFamily::quadratic;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  [[nodiscard]] ConvexityCertificate certificate() const { return {alpha, beta}; }
  [[nodiscard]] double kappa() const { return beta / alpha; }
  [[nodiscard]] StepConfig step_config() const {
    return {h.value_or(1.0 / beta), certificate()};
  }

  /// n = 5, kappa = 1.2 (alpha = 1), b = 1, p_U = 0.95, K = 600, 10000 reps.
  static ExperimentConfig fig1();
};

struct TrajectoryRow {
  std::size_t k;
  EventKind event;
  double c;               ///< ||x^k - x*^k||^2
  double suboptimality;   ///< f^k(x^k) - f^k(x*^k)
  double minimizer_shift; ///< ||x*^k - x*^{k-1}||^2; zero on updates
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
};

using QuadraticSampler = std::function<QuadraticFunction(Rng&, const ConvexityCertificate&)>;
using GeneralSampler = std::function<SmoothFunction(Rng&, const ConvexityCertificate&)>;

/// Runs config.horizon iterations from the configured initial state. The
/// initial roster is drawn from the replacement distribution for the
/// configured family. Deterministic in (config, seed).
TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed);

/// Quadratic roster with a caller-supplied replacement distribution.
TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed,
                                const QuadraticSampler& sampler);

/// General roster; minimizers are recomputed by dual bisection.
TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed,
                                const GeneralSampler& sampler);

/// One-step transition sums gathered across replications, indexed by the
/// destination iteration k (entry 0 unused). For every replication whose
/// event at k has the given kind, `before` accumulates C^{k-1} and `after`
/// accumulates C^k.
struct TransitionSums {
  std::vector<std::size_t> count;
  std::vector<double> before;
  std::vector<double> after;
};

struct ReplicationStats {
  std::vector<double> mean_c;
  std::vector<double> ci_halfwidth;  ///< 1.96 * sample sd / sqrt(R)
  std::size_t replication_count = 0;
  TransitionSums updates;
  TransitionSums replacements;
};

/// Runs replications with seeds base_seed + r. threads == 0 picks the
/// hardware concurrency. Results do not depend on the thread count: work is
/// split into fixed blocks whose partial sums are merged in block order.
ReplicationStats run_ensemble(const ExperimentConfig& config, std::size_t replications,
                              std::uint64_t base_seed, std::size_t threads = 0);

/// Resolves a requested worker count (0 = auto) against the hardware.
std::size_t resolve_thread_count(std::size_t requested) noexcept;

}  // namespace openrcd
