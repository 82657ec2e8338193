#include "openrcd/opensim.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "openrcd/allocation.hpp"
#include "openrcd/errors.hpp"

namespace openrcd {

namespace {

constexpr std::size_t kBlockSize = 64;
constexpr double kNormalQuantile975 = 1.959963984540054;

void quadratic_minimizer(const std::vector<QuadraticFunction>& roster, double b,
                         std::vector<double>& out) {
  closed_form_quadratic_minimizer(roster, b, out);
}

void general_minimizer(const std::vector<SmoothFunction>& roster, double b,
                       std::vector<double>& out) {
  const auto result = dual_bisection_minimizer(roster, b);
  const auto v = result.point.values();
  std::copy(v.begin(), v.end(), out.begin());
}

// Drives one replication and reports every visited iteration to visit(k,
// event, state, xstar, shift).
template <ScalarCost F, class Sample, class Minimize, class Visit>
void simulate(const ExperimentConfig& cfg, std::uint64_t seed, Sample&& sample,
              Minimize&& minimize, Visit&& visit) {
  cfg.validate();
  Rng rng = make_rng(seed);
  const StepConfig step_config = cfg.step_config();
  const EventSchedule schedule(cfg.p_update, seed);
  const std::size_t n = cfg.n;

  SystemState<F> state;
  state.budget = cfg.b;
  state.roster.reserve(n);
  for (std::size_t i = 0; i < n; ++i) state.roster.push_back(sample(rng));

  std::vector<double> xstar(n);
  std::vector<double> previous(n);
  minimize(state.roster, cfg.b, xstar);

  switch (cfg.initial_state) {
    case InitialState::uniform_budget:
      state.x.assign(n, cfg.b / static_cast<double>(n));
      break;
    case InitialState::minimizer:
      state.x = xstar;
      break;
    case InitialState::explicit_vector:
      state.x = cfg.initial_vector;
      break;
  }

  visit(std::size_t{0}, EventKind::initial, state, xstar, 0.0);
  for (std::size_t k = 1; k <= cfg.horizon; ++k) {
    const EventKind kind = step(state, schedule, step_config, rng, sample);
    double shift = 0.0;
    if (kind == EventKind::replacement) {
      previous.swap(xstar);
      minimize(state.roster, cfg.b, xstar);
      shift = squared_distance(xstar, previous);
    }
    visit(k, kind, state, xstar, shift);
  }
}

template <ScalarCost F>
auto record_visitor(TrajectoryRecord& record) {
  return [&record](std::size_t k, EventKind kind, const SystemState<F>& st,
                   const std::vector<double>& xstar, double shift) {
    const std::span<const F> roster(st.roster);
    const double c = squared_distance(st.x, xstar);
    const double sub = total_cost(roster, std::span<const double>(st.x)) -
                       total_cost(roster, std::span<const double>(xstar));
    record.rows.push_back({k, kind, c, sub, shift});
  };
}

struct BlockSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  TransitionSums updates;
  TransitionSums replacements;

  explicit BlockSums(std::size_t len)
      : sum(len, 0.0),
        sum_sq(len, 0.0),
        updates{std::vector<std::size_t>(len, 0), std::vector<double>(len, 0.0),
                std::vector<double>(len, 0.0)},
        replacements{std::vector<std::size_t>(len, 0), std::vector<double>(len, 0.0),
                     std::vector<double>(len, 0.0)} {}
};

void merge_transitions(TransitionSums& into, const TransitionSums& from) {
  for (std::size_t k = 0; k < into.count.size(); ++k) {
    into.count[k] += from.count[k];
    into.before[k] += from.before[k];
    into.after[k] += from.after[k];
  }
}

template <ScalarCost F, class Sample, class Minimize>
void run_block(const ExperimentConfig& cfg, std::uint64_t first_seed, std::size_t count,
               Sample& sample, Minimize& minimize, BlockSums& out) {
  for (std::size_t r = 0; r < count; ++r) {
    double last_c = 0.0;
    simulate<F>(cfg, first_seed + r, sample, minimize,
                [&](std::size_t k, EventKind kind, const SystemState<F>& st,
                    const std::vector<double>& xstar, double) {
                  const double c = squared_distance(st.x, xstar);
                  out.sum[k] += c;
                  out.sum_sq[k] += c * c;
                  if (kind != EventKind::initial) {
                    TransitionSums& t =
                        kind == EventKind::update ? out.updates : out.replacements;
                    t.count[k] += 1;
                    t.before[k] += last_c;
                    t.after[k] += c;
                  }
                  last_c = c;
                });
  }
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::initial:
      return "initial";
    case EventKind::update:
      return "update";
    case EventKind::replacement:
      return "replacement";
  }
  return "unknown";
}

EventSchedule::EventSchedule(double p_update, std::uint64_t seed)
    : p_update_(p_update), seed_(seed) {
  if (!(p_update >= 0.0 && p_update <= 1.0)) {
    throw ParameterError("EventSchedule: p_U must be in [0, 1]");
  }
}

EventKind EventSchedule::draw(Rng& rng) const {
  std::bernoulli_distribution is_update(p_update_);
  return is_update(rng) ? EventKind::update : EventKind::replacement;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ConfigError("n", "must be >= 2");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha", "must be > 0");
  if (!(beta >= alpha) || !std::isfinite(beta)) throw ConfigError("beta", "must be >= alpha");
  if (!std::isfinite(b)) throw ConfigError("b", "must be finite");
  if (!(p_update >= 0.0 && p_update <= 1.0)) throw ConfigError("p_U", "must be in [0, 1]");
  if (h.has_value() && !(*h > 0.0 && *h <= 1.0 / beta)) {
    throw ConfigError("h", "must satisfy 0 < h <= 1/beta");
  }
  if (replications < 1) throw ConfigError("replications", "must be >= 1");
  if (initial_state == InitialState::explicit_vector) {
    if (initial_vector.size() != n) throw ConfigError("initial_vector", "must have n entries");
    const double s = std::accumulate(initial_vector.begin(), initial_vector.end(), 0.0);
    if (!(std::fabs(s - b) <= kFeasibilityTol)) {
      throw ConfigError("initial_vector", "entries must sum to b");
    }
  }
}

ExperimentConfig ExperimentConfig::fig1() {
  ExperimentConfig c;
  c.n = 5;
  c.alpha = 1.0;
  c.beta = 1.2;
  c.b = 1.0;
  c.p_update = 0.95;
  c.horizon = 600;
  c.replications = 10000;
  c.seed = 1;
  return c;
}

TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed,
                                const QuadraticSampler& sampler) {
  const ConvexityCertificate cert = config.certificate();
  auto sample = [&](Rng& rng) { return sampler(rng, cert); };
  TrajectoryRecord record;
  record.rows.reserve(config.horizon + 1);
  simulate<QuadraticFunction>(config, seed, sample, quadratic_minimizer,
                              record_visitor<QuadraticFunction>(record));
  return record;
}

TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed,
                                const GeneralSampler& sampler) {
  const ConvexityCertificate cert = config.certificate();
  auto sample = [&](Rng& rng) { return sampler(rng, cert); };
  TrajectoryRecord record;
  record.rows.reserve(config.horizon + 1);
  simulate<SmoothFunction>(config, seed, sample, general_minimizer,
                           record_visitor<SmoothFunction>(record));
  return record;
}

namespace {

SmoothFunction logcosh_sampler(Rng& rng, const ConvexityCertificate& cert) {
  return SmoothFunction::wrap(sample_logcosh_replacement(rng, cert), cert);
}

}  // namespace

TrajectoryRecord run_trajectory(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.family == FunctionFamily::logcosh_quadratic) {
    return run_trajectory(config, seed, GeneralSampler(logcosh_sampler));
  }
  return run_trajectory(config, seed, QuadraticSampler(sample_replacement));
}

std::size_t resolve_thread_count(std::size_t requested) noexcept {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ReplicationStats run_ensemble(const ExperimentConfig& config, std::size_t replications,
                              std::uint64_t base_seed, std::size_t threads) {
  config.validate();
  if (replications < 1) throw ConfigError("replications", "must be >= 1");

  const std::size_t len = config.horizon + 1;
  const std::size_t blocks = (replications + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> partial;
  partial.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i) partial.emplace_back(len);

  const ConvexityCertificate cert = config.certificate();
  std::atomic<std::size_t> next_block{0};

  auto worker = [&]() {
    auto quad_sample = [&](Rng& rng) { return sample_replacement(rng, cert); };
    auto smooth_sample = [&](Rng& rng) { return logcosh_sampler(rng, cert); };
    auto quad_min = quadratic_minimizer;
    auto smooth_min = general_minimizer;
    for (std::size_t blk = next_block++; blk < blocks; blk = next_block++) {
      const std::size_t first = blk * kBlockSize;
      const std::size_t count = std::min(kBlockSize, replications - first);
      if (config.family == FunctionFamily::quadratic) {
        run_block<QuadraticFunction>(config, base_seed + first, count, quad_sample, quad_min,
                                     partial[blk]);
      } else {
        run_block<SmoothFunction>(config, base_seed + first, count, smooth_sample, smooth_min,
                                  partial[blk]);
      }
    }
  };

  const std::size_t workers = std::min(resolve_thread_count(threads), blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  BlockSums total(len);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < len; ++k) {
      total.sum[k] += p.sum[k];
      total.sum_sq[k] += p.sum_sq[k];
    }
    merge_transitions(total.updates, p.updates);
    merge_transitions(total.replacements, p.replacements);
  }

  ReplicationStats stats;
  stats.replication_count = replications;
  stats.mean_c.resize(len);
  stats.ci_halfwidth.resize(len);
  const double r = static_cast<double>(replications);
  for (std::size_t k = 0; k < len; ++k) {
    const double mean = total.sum[k] / r;
    stats.mean_c[k] = mean;
    if (replications > 1) {
      const double var = std::max(0.0, (total.sum_sq[k] - r * mean * mean) / (r - 1.0));
      stats.ci_halfwidth[k] = kNormalQuantile975 * std::sqrt(var / r);
    } else {
      stats.ci_halfwidth[k] = 0.0;
    }
  }
  stats.updates = std::move(total.updates);
  stats.replacements = std::move(total.replacements);
  return stats;
}

}  // namespace openrcd
