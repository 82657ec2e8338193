#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "openrcd/allocation.hpp"
#include "openrcd/functions.hpp"
#include "openrcd/random.hpp"

namespace openrcd {

/// An edge (i, j), i != j, of the complete graph together with its
/// selection probability 2 / (n (n - 1)).
class PairSelection {
 public:
  /// Throws ParameterError unless i != j and both are < n.
  PairSelection(std::size_t i, std::size_t j, std::size_t n);

  [[nodiscard]] std::size_t i() const noexcept { return i_; }
  [[nodiscard]] std::size_t j() const noexcept { return j_; }
  [[nodiscard]] double probability() const noexcept { return probability_; }

 private:
  std::size_t i_;
  std::size_t j_;
  double probability_;
};

/// Number of undirected edges of the complete graph on n vertices.
constexpr std::size_t edge_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Maps an edge index in [0, n(n-1)/2) to its (i, j) pair, i < j, in
/// lexicographic order.
PairSelection edge_from_index(std::size_t index, std::size_t n);

/// Uniform draw over the edges of the complete graph. Requires n >= 2.
PairSelection sample_edge(Rng& rng, std::size_t n);

/// Step size h with 0 < h <= 1/beta.
class StepConfig {
 public:
  StepConfig(double h, const ConvexityCertificate& cert);

  /// h = 1/beta, the plain coordinate-descent step.
  static StepConfig standard(const ConvexityCertificate& cert);

  [[nodiscard]] double h() const noexcept { return h_; }

 private:
  double h_;
};

/// In-place pair update: with g = f_i'(x_i) - f_j'(x_j),
/// x_i -= (h/2) g and x_j += (h/2) g. Only two entries change and the same
/// increment is added and subtracted, so the sum is preserved.
template <ScalarCost F>
void apply_pair_step(std::span<double> x, std::span<const F> fs, const PairSelection& sel,
                     const StepConfig& step) {
  const std::size_t i = sel.i();
  const std::size_t j = sel.j();
  const double g = fs[i].gradient(x[i]) - fs[j].gradient(x[j]);
  const double d = 0.5 * step.h() * g;
  x[i] -= d;
  x[j] += d;
}

/// Value-returning form of apply_pair_step.
template <ScalarCost F>
Allocation rcd_pair_step(const Allocation& x, std::span<const F> fs, const PairSelection& sel,
                         const StepConfig& step) {
  std::vector<double> next(x.values().begin(), x.values().end());
  apply_pair_step<F>(next, fs, sel, step);
  return {std::move(next), x.budget()};
}

/// Pair step for a general weight constraint a_i s_i + a_j s_j = 0:
/// (d_i, d_j) = -h P (f_i', f_j') with P = I - w w' / |w|^2, w = (a_i, a_j).
/// Returns the updated vector. Throws ParameterError when a_i = a_j = 0.
template <ScalarCost F>
std::vector<double> general_weight_pair_step(std::span<const double> x, std::span<const F> fs,
                                             double a_i, double a_j, const PairSelection& sel,
                                             const StepConfig& step);

/// The 2x2 displacement (d_i, d_j) used by general_weight_pair_step.
std::array<double, 2> projected_pair_direction(double grad_i, double grad_j, double a_i,
                                               double a_j, double h);

template <ScalarCost F>
std::vector<double> general_weight_pair_step(std::span<const double> x, std::span<const F> fs,
                                             double a_i, double a_j, const PairSelection& sel,
                                             const StepConfig& step) {
  const auto d = projected_pair_direction(fs[sel.i()].gradient(x[sel.i()]),
                                          fs[sel.j()].gradient(x[sel.j()]), a_i, a_j, step.h());
  std::vector<double> next(x.begin(), x.end());
  next[sel.i()] += d[0];
  next[sel.j()] += d[1];
  return next;
}

/// Dense row-major n x n matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
};

/// Q^{ij}: 1/2 on (i,i), (j,j); -1/2 on (i,j), (j,i); zero elsewhere.
DenseMatrix selection_matrix(std::size_t i, std::size_t j, std::size_t n);

/// Verifies sum_e p Q^e = (p/2)(n I - 1 1') entrywise to 1e-14, and that every
/// Q^e is symmetric and idempotent. Requires n >= 2.
bool laplacian_identity_check(std::size_t n);

/// E ||x+ - x*||^2 over the n(n-1)/2 equiprobable edges, computed by
/// enumeration.
template <ScalarCost F>
double exact_onestep_expectation(std::span<const double> x, std::span<const F> fs,
                                 std::span<const double> xstar, const StepConfig& step) {
  const std::size_t n = x.size();
  const double base = squared_distance(x, xstar);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = fs[i].gradient(x[i]) - fs[j].gradient(x[j]);
      const double d = 0.5 * step.h() * g;
      const double ei = x[i] - xstar[i];
      const double ej = x[j] - xstar[j];
      const double ni = ei - d;
      const double nj = ej + d;
      acc += base - ei * ei - ej * ej + ni * ni + nj * nj;
    }
  }
  return acc / static_cast<double>(edge_count(n));
}

}  // namespace openrcd
