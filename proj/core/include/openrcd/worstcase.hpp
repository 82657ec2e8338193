// Direct search for the largest minimizer displacement caused by replacing a
// single quadratic cost. The search only ever reports values attained by a
// concrete instance, so every result is a lower bound on the true worst case.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "openrcd/functions.hpp"

namespace openrcd {

/// Costs f_1..f_{n-1} stay; f_n changes from `before` to `after`.
struct ReplacementInstance {
  std::vector<QuadraticFunction> shared;
  QuadraticFunction before;
  QuadraticFunction after;
  double b;

  [[nodiscard]] std::size_t agents() const noexcept { return shared.size() + 1; }
  /// Throws ParameterError if any curvature or location is out of range.
  void validate(const ConvexityCertificate& cert) const;
};

/// ||x*(after) - x*(before)||^2, each minimizer from the closed form.
double displacement(const ReplacementInstance& inst);

struct WorstCaseResult {
  double value;
  ReplacementInstance witness;
  /// All curvatures of the witness sit on the ends of [alpha/2, beta/2].
  bool theta_on_boundary;
  std::size_t starts_used;
};

/// Multi-start coordinate ascent over (theta, mu) of all n + 1 costs, with
/// alpha = 1 and beta = kappa. The start list is fixed: first the 3^6
/// structured starts (shared curvatures / shared locations / before pair /
/// after pair each at low, mid or high), then seeded uniform starts. The
/// search uses the first search_budget starts, so the result is
/// nondecreasing in search_budget. Requires n >= 1, search_budget >= 1.
WorstCaseResult maximize_displacement(std::size_t n, double kappa, double b,
                                      std::size_t search_budget, std::uint64_t seed = 0);

/// Number of structured starts preceding the random ones.
inline constexpr std::size_t kStructuredStarts = 729;
/// Default random starts appended after the structured ones.
inline constexpr std::size_t kRandomStarts = 64;

struct SweepRow {
  std::size_t n;
  double kappa;
  double empirical_max;
  double prop3;
  double prop5;
  double conjecture;
  bool theta_on_boundary;
};

/// One row per (n, kappa), n varying fastest within each kappa.
std::vector<SweepRow> sweep(std::span<const std::size_t> ns, std::span<const double> kappas,
                            double b, std::size_t search_budget, std::uint64_t seed = 0);

}  // namespace openrcd
