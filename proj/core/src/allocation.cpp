#include "openrcd/allocation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "openrcd/errors.hpp"

namespace openrcd {

namespace {

constexpr int kMaxOuterIterations = 200;
constexpr int kMaxInnerIterations = 200;

std::string describe(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

Allocation::Allocation(std::vector<double> values, double budget)
    : values_(std::move(values)), budget_(budget) {
  if (values_.empty()) throw ParameterError("Allocation requires at least one agent");
  const double r = residual();
  if (!(std::fabs(r) <= kFeasibilityTol)) {
    throw ParameterError("Allocation infeasible: sum(x) - b = " + describe(r));
  }
}

Allocation Allocation::uniform(std::size_t n, double budget) {
  if (n == 0) throw ParameterError("Allocation requires at least one agent");
  return {std::vector<double>(n, budget / static_cast<double>(n)), budget};
}

double Allocation::residual() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) - budget_;
}

double closed_form_quadratic_minimizer(std::span<const QuadraticFunction> fs, double b,
                                       std::span<double> out) {
  const std::size_t n = fs.size();
  if (n == 0) throw ParameterError("closed_form_quadratic_minimizer: n must be >= 1");
  if (n == 1) {
    out[0] = b;
    return fs[0].gradient(b);
  }
  double inv_curvature = 0.0;
  double location_sum = 0.0;
  for (const auto& f : fs) {
    if (!(f.theta() > 0.0)) throw ParameterError("closed_form_quadratic_minimizer: theta must be > 0");
    inv_curvature += 1.0 / f.theta();
    location_sum += f.mu();
  }
  const double gap = b - location_sum;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = fs[i].mu() + gap / (fs[i].theta() * inv_curvature);
  }
  return 2.0 * gap / inv_curvature;
}

MinimizerResult closed_form_quadratic_minimizer(std::span<const QuadraticFunction> fs, double b) {
  std::vector<double> x(fs.size());
  const double multiplier = closed_form_quadratic_minimizer(fs, b, x);
  return {Allocation(std::move(x), b), multiplier, MinimizerMethod::closed_form};
}

double inverse_gradient(const SmoothFunction& f, double nu) {
  const auto& cert = f.certificate();
  const double m = f.minimizer();
  // g(m + t) lies between alpha t and beta t.
  double lo = m + std::min(nu / cert.alpha(), nu / cert.beta());
  double hi = m + std::max(nu / cert.alpha(), nu / cert.beta());
  double glo = f.gradient(lo) - nu;
  double ghi = f.gradient(hi) - nu;

  for (int widen = 0; (glo > 0.0 || ghi < 0.0) && widen < 60; ++widen) {
    const double width = std::max(hi - lo, 1e-12 * (1.0 + std::fabs(m)));
    if (glo > 0.0) {
      lo -= width;
      glo = f.gradient(lo) - nu;
    }
    if (ghi < 0.0) {
      hi += width;
      ghi = f.gradient(hi) - nu;
    }
  }
  if (glo > 0.0 || ghi < 0.0) {
    throw SolverError("inverse_gradient: no bracket for nu = " + describe(nu) +
                      " (certificate violated?)");
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  // Secant step through the bracket ends, falling back to bisection.
  double x = lo - glo * (hi - lo) / (ghi - glo);
  double prev_x = lo;
  double prev_g = glo;
  for (int it = 0; it < kMaxInnerIterations; ++it) {
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double gx = f.gradient(x) - nu;
    if (gx == 0.0) return x;
    if (gx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) {
      return 0.5 * (lo + hi);
    }
    double next = 0.5 * (lo + hi);
    if (x != prev_x && gx != prev_g) next = x - gx * (x - prev_x) / (gx - prev_g);
    prev_x = x;
    prev_g = gx;
    x = next;
  }
  return 0.5 * (lo + hi);
}

MinimizerResult dual_bisection_minimizer(std::span<const SmoothFunction> fs, double b,
                                         double tol) {
  const std::size_t n = fs.size();
  if (n == 0) throw ParameterError("dual_bisection_minimizer: n must be >= 1");
  if (!(tol > 0.0)) throw ParameterError("dual_bisection_minimizer: tol must be > 0");
  tol = std::min(tol, kFeasibilityTol);

  if (n == 1) {
    return {Allocation({b}, b), fs[0].gradient(b), MinimizerMethod::dual_bisection};
  }

  double kappa = 1.0;
  for (const auto& f : fs) kappa = std::max(kappa, f.certificate().kappa());
  double min_alpha = fs[0].certificate().alpha();
  double max_beta = fs[0].certificate().beta();
  for (const auto& f : fs) {
    min_alpha = std::min(min_alpha, f.certificate().alpha());
    max_beta = std::max(max_beta, f.certificate().beta());
  }
  kappa = std::max(kappa, max_beta / min_alpha);
  const double radius = minimizer_ball_radius(n, kappa, b);

  double nu_lo = std::numeric_limits<double>::infinity();
  double nu_hi = -std::numeric_limits<double>::infinity();
  for (const auto& f : fs) {
    nu_lo = std::min(nu_lo, f.gradient(-radius));
    nu_hi = std::max(nu_hi, f.gradient(radius));
  }

  std::vector<double> x(n);
  auto excess = [&](double nu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = inverse_gradient(fs[i], nu);
      s += x[i];
    }
    return s - b;
  };

  if (excess(nu_lo) > tol || excess(nu_hi) < -tol) {
    throw SolverError("dual_bisection_minimizer: initial bracket does not contain the solution");
  }

  for (int it = 0; it < kMaxOuterIterations; ++it) {
    const double nu = 0.5 * (nu_lo + nu_hi);
    const double e = excess(nu);
    if (std::fabs(e) <= tol) {
      return {Allocation(std::move(x), b), nu, MinimizerMethod::dual_bisection};
    }
    if (nu == nu_lo || nu == nu_hi) break;
    if (e < 0.0) {
      nu_lo = nu;
    } else {
      nu_hi = nu;
    }
  }
  throw SolverError("dual_bisection_minimizer: bracket failed to close (certificate violated?)");
}

double minimizer_ball_radius(std::size_t n, double kappa, double b) {
  if (n == 0) throw ParameterError("minimizer_ball_radius: n must be >= 1");
  if (!(kappa >= 1.0)) throw ParameterError("minimizer_ball_radius: kappa must be >= 1");
  const double dn = static_cast<double>(n);
  return std::sqrt(dn) + (1.0 + std::fabs(b) / dn) * std::sqrt(kappa * dn);
}

bool check_in_ball(std::span<const double> x, double radius) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s) <= radius;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

}  // namespace openrcd
