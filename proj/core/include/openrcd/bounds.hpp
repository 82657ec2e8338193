// Closed-form convergence quantities for coordinate descent on the budget
// hyperplane when local costs get replaced at random.
//
// Notation used in the comments below:
//   c   = 1 / ((n - 1) kappa)          per-update contraction margin (h = 1/beta)
//   A   = 1 + 1/sqrt(kappa) + |b|/n    minimizer-shift factor
//   rho = p_R / p_U                    replacements per update
//
// All functions are pure. Quantities that can diverge are returned as a
// Level, which carries an explicit unbounded state instead of an overflowed
// double.
#pragma once

#include <cstddef>
#include <vector>

namespace openrcd {

class Level {
 public:
  static Level finite(double v);
  static Level unbounded() noexcept { return Level{}; }

  [[nodiscard]] bool is_finite() const noexcept { return finite_; }
  /// Throws std::logic_error when unbounded.
  [[nodiscard]] double value() const;
  [[nodiscard]] double value_or(double fallback) const noexcept {
    return finite_ ? value_ : fallback;
  }

 private:
  Level() = default;
  bool finite_ = false;
  double value_ = 0.0;
};

/// 1 - h alpha / (n - 1): expected one-step contraction of ||x - x*||^2 in a
/// closed system. Requires n >= 2 and h > 0.
double closed_system_rate(std::size_t n, double alpha, double h);

struct OpenRate {
  double rate;   ///< 2 - p_U (1 + c)
  double gamma;  ///< 8 (1 - p_U) A^2 n kappa
};

/// One-step recursion E C+ <= rate E C + gamma for general admissible costs.
OpenRate open_rate_and_gamma(std::size_t n, double kappa, double b, double p_update);

/// Additive term of the same recursion when every cost is quadratic:
/// (1 - p_U) 8 ((k^3 + k n - 2)/(k n) + (|b| + n)^2 (k-1)^2 k^2 (k^2 n^2 + n - 1) / n^4).
double quadratic_gamma_prime(std::size_t n, double kappa, double b, double p_update);

struct StabilityThresholds {
  double p_update_min;     ///< kappa (n-1) / (kappa (n-1) + 1)
  double rho_replace_max;  ///< 1 / ((n-1) kappa)
};

StabilityThresholds stability_thresholds(std::size_t n, double kappa);

/// Per-edge / per-agent event probabilities for a given p_U.
struct EventProbabilities {
  double per_edge;   ///< 2 p_U / (n (n-1))
  double per_agent;  ///< (1 - p_U) / n
};

EventProbabilities event_probabilities(std::size_t n, double p_update);

/// True iff p_U strictly exceeds the stability threshold.
bool is_stable(std::size_t n, double kappa, double p_update);

/// Same condition stated per agent and per edge: p_a < p_e / (2 kappa).
bool is_stable_per_probability(std::size_t n, double kappa, double p_update);

/// rho = (1 - p_U) / p_U; unbounded at p_U = 0.
Level replacement_ratio(double p_update);

/// Steady-state level 8 n kappa A rho / (c - rho), with A to the first power
/// exactly as stated alongside the solved recurrence. Unbounded for rho >= c.
Level steady_state_gamma(std::size_t n, double kappa, double b, double rho);

/// Exact fixed point gamma / (1 - rate) of the general one-step recursion.
/// Unbounded when rate >= 1.
Level gamma_from_recursion(std::size_t n, double kappa, double b, double p_update);

/// 1 + (rho - c) / (1 + rho); equals open_rate_and_gamma(...).rate.
double envelope_rate(std::size_t n, double kappa, double rho);

/// gamma + rate^k (c0 - gamma) for k = 0..horizon using steady_state_gamma.
/// Throws ParameterError if that level is unbounded.
std::vector<double> steady_state_envelope(std::size_t n, double kappa, double b, double rho,
                                          double c0, std::size_t horizon);

/// B_0 = c0, B_{k+1} = rate B_k + additive, for k = 0..horizon.
std::vector<double> recursion_envelope(double rate, double additive, double c0,
                                       std::size_t horizon);

/// Cap on ||x*(2) - x*(1)||^2 when costs change: 4 n kappa A^2.
double prop3_bound(std::size_t n, double kappa, double b);

/// Conditional-on-replacement map C -> 2 C + 2 prop3_bound.
double prop4_map(double c, std::size_t n, double kappa, double b);

/// Quadratic-specific single-replacement displacement cap:
/// 8 (k^3 + k n - 2)/(k n) + 8 (|b| + n)^2 (k-1)^2 k^2 (k^2 n^2 + n - 1) / n^4.
double prop5_bound(std::size_t n, double kappa, double b);

/// (kappa + 1)^2 - c1 kappa^3 / (n + kappa + c2). Requires n + kappa + c2 > 0.
double conjecture_curve(double n, double kappa, double c1 = 1.0, double c2 = 1.0);

struct BoundParameters {
  std::size_t n;
  double alpha;
  double beta;
  double b;
  double h;
  double p_update;
};

struct BoundSet {
  double closed_rate;
  double open_rate;
  double gamma;
  double gamma_prime;
  Level gamma_ss;
  Level gamma_recursion;
  double r_ball;
  double p_update_threshold;
  double rho_replace_threshold;
  bool stable;
  /// Whether the printed steady-state level and the recursion fixed point
  /// coincide (to 1e-12 relative). They generally do not.
  bool gamma_readings_agree;
};

BoundSet evaluate_bounds(const BoundParameters& p);

}  // namespace openrcd
