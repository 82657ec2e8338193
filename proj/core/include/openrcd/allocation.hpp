#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "openrcd/functions.hpp"

namespace openrcd {

/// Absolute tolerance on |sum(x) - b| for a point to count as feasible.
inline constexpr double kFeasibilityTol = 1e-9;

/// A point on the budget hyperplane {x : sum(x) = budget}.
class Allocation {
 public:
  /// Throws ParameterError if the values do not sum to the budget within
  /// kFeasibilityTol, or if values is empty.
  Allocation(std::vector<double> values, double budget);

  /// (budget / n, ..., budget / n).
  static Allocation uniform(std::size_t n, double budget);

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double budget() const noexcept { return budget_; }

  /// sum(x) - budget.
  [[nodiscard]] double residual() const noexcept;

  operator std::span<const double>() const noexcept { return values_; }  // NOLINT

 private:
  std::vector<double> values_;
  double budget_;
};

enum class MinimizerMethod { closed_form, dual_bisection };

/// Constrained minimizer of sum f_i(x_i) over the budget hyperplane.
///
/// Sign convention: multiplier is the common gradient value, i.e.
/// f_i'(point[i]) == multiplier for every i. The Lagrangian
/// f(x) + lambda (1'x - b) has lambda = -multiplier.
struct MinimizerResult {
  Allocation point;
  double multiplier;
  MinimizerMethod method;
};

/// x_i = mu_i + (b - sum mu) / (theta_i * sum_j 1/theta_j). Requires n >= 1.
MinimizerResult closed_form_quadratic_minimizer(std::span<const QuadraticFunction> fs, double b);

/// Allocation-free variant for hot loops; writes x* into out (same length as
/// fs) and returns the multiplier.
double closed_form_quadratic_minimizer(std::span<const QuadraticFunction> fs, double b,
                                       std::span<double> out);

/// Solves f_i'(x_i) = nu for x_i. Safeguarded secant/Newton inside the
/// bracket implied by the function's certificate. Throws SolverError if the
/// certificate is violated badly enough that no bracket can be found.
double inverse_gradient(const SmoothFunction& f, double nu);

/// Bisection on the common gradient value nu until |sum_i x_i(nu) - b| <= tol.
/// The initial nu-bracket comes from the minimizer ball radius computed with
/// the worst condition number in the roster. tol is capped at kFeasibilityTol.
/// Throws SolverError if the bracket does not close in 200 iterations.
MinimizerResult dual_bisection_minimizer(std::span<const SmoothFunction> fs, double b,
                                         double tol = 1e-12);

/// sqrt(n) + (1 + |b|/n) sqrt(kappa n). Any constrained minimizer of an
/// admissible roster lies in the ball of this radius around the origin.
double minimizer_ball_radius(std::size_t n, double kappa, double b);

/// ||x|| <= radius.
bool check_in_ball(std::span<const double> x, double radius);

/// max_i f_i'(x_i) - min_i f_i'(x_i); zero at a stationary point.
template <ScalarCost F>
double stationarity_spread(std::span<const F> fs, std::span<const double> x) {
  double lo = fs[0].gradient(x[0]);
  double hi = lo;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    const double g = fs[i].gradient(x[i]);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return hi - lo;
}

/// sum_i f_i(x_i).
template <ScalarCost F>
double total_cost(std::span<const F> fs, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) acc += fs[i].value(x[i]);
  return acc;
}

/// ||x - y||^2.
double squared_distance(std::span<const double> x, std::span<const double> y);

}  // namespace openrcd
