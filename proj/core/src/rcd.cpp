#include "openrcd/rcd.hpp"

#include <cmath>
#include <string>

#include "openrcd/errors.hpp"

namespace openrcd {

PairSelection::PairSelection(std::size_t i, std::size_t j, std::size_t n) : i_(i), j_(j) {
  if (n < 2) throw ParameterError("PairSelection: n must be >= 2");
  if (i == j) throw ParameterError("PairSelection: i and j must differ");
  if (i >= n || j >= n) throw ParameterError("PairSelection: index out of range");
  probability_ = 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
}

PairSelection edge_from_index(std::size_t index, std::size_t n) {
  if (index >= edge_count(n)) throw ParameterError("edge_from_index: index out of range");
  // Row i holds the n - 1 - i edges (i, i+1) ... (i, n-1).
  std::size_t i = 0;
  std::size_t row = n - 1;
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + index, n};
}

PairSelection sample_edge(Rng& rng, std::size_t n) {
  if (n < 2) throw ParameterError("sample_edge: n must be >= 2");
  std::uniform_int_distribution<std::size_t> pick(0, edge_count(n) - 1);
  return edge_from_index(pick(rng), n);
}

StepConfig::StepConfig(double h, const ConvexityCertificate& cert) : h_(h) {
  if (!(h > 0.0)) throw ParameterError("StepConfig: h = " + std::to_string(h) + " violates h > 0");
  if (!(h <= 1.0 / cert.beta())) {
    throw ParameterError("StepConfig: h = " + std::to_string(h) + " violates h <= 1/beta");
  }
}

StepConfig StepConfig::standard(const ConvexityCertificate& cert) {
  return {1.0 / cert.beta(), cert};
}

std::array<double, 2> projected_pair_direction(double grad_i, double grad_j, double a_i,
                                               double a_j, double h) {
  const double norm2 = a_i * a_i + a_j * a_j;
  if (!(norm2 > 0.0)) throw ParameterError("general_weight_pair_step: a_i = a_j = 0");
  // P g = g - w (w'g) / |w|^2
  const double along = (a_i * grad_i + a_j * grad_j) / norm2;
  return {-h * (grad_i - a_i * along), -h * (grad_j - a_j * along)};
}

DenseMatrix selection_matrix(std::size_t i, std::size_t j, std::size_t n) {
  const PairSelection sel(i, j, n);
  DenseMatrix q{n, std::vector<double>(n * n, 0.0)};
  q(sel.i(), sel.i()) = 0.5;
  q(sel.j(), sel.j()) = 0.5;
  q(sel.i(), sel.j()) = -0.5;
  q(sel.j(), sel.i()) = -0.5;
  return q;
}

bool laplacian_identity_check(std::size_t n) {
  if (n < 2) throw ParameterError("laplacian_identity_check: n must be >= 2");
  constexpr double tol = 1e-14;
  const double p = 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));

  DenseMatrix sum{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const DenseMatrix q = selection_matrix(i, j, n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (q(r, c) != q(c, r)) return false;
          double sq = 0.0;
          for (std::size_t m = 0; m < n; ++m) sq += q(r, m) * q(m, c);
          if (std::fabs(sq - q(r, c)) > tol) return false;
          sum(r, c) += p * q(r, c);
        }
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double laplacian = (r == c ? static_cast<double>(n) : 0.0) - 1.0;
      if (std::fabs(sum(r, c) - 0.5 * p * laplacian) > tol) return false;
    }
  }
  return true;
}

}  // namespace openrcd
