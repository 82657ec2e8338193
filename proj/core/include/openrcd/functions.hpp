#pragma once

#include <concepts>
#include <functional>
#include <optional>

#include "openrcd/random.hpp"

namespace openrcd {

/// Strong-convexity / smoothness pair shared by a family of local costs.
/// Invariant: 0 < alpha <= beta.
class ConvexityCertificate {
 public:
  ConvexityCertificate(double alpha, double beta);

  /// Certificate with the given condition number, normalized to alpha.
  static ConvexityCertificate from_kappa(double kappa, double alpha = 1.0);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double kappa() const noexcept { return beta_ / alpha_; }

 private:
  double alpha_;
  double beta_;
};

/// Anything usable as a scalar local cost by the solvers and the update rule.
template <class F>
concept ScalarCost = requires(const F& f, double x) {
  { f.value(x) } -> std::convertible_to<double>;
  { f.gradient(x) } -> std::convertible_to<double>;
  { f.minimizer() } -> std::convertible_to<double>;
};

/// theta * (x - mu)^2. Construct through make_quadratic or the sampler.
class QuadraticFunction {
 public:
  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double mu() const noexcept { return mu_; }

  [[nodiscard]] double value(double x) const noexcept {
    const double d = x - mu_;
    return theta_ * d * d;
  }
  [[nodiscard]] double gradient(double x) const noexcept { return 2.0 * theta_ * (x - mu_); }
  [[nodiscard]] double minimizer() const noexcept { return mu_; }

  friend bool operator==(const QuadraticFunction&, const QuadraticFunction&) = default;

 private:
  QuadraticFunction(double theta, double mu) noexcept : theta_(theta), mu_(mu) {}

  friend QuadraticFunction make_quadratic(double, double, const ConvexityCertificate&);
  friend QuadraticFunction make_quadratic_unchecked(double, double) noexcept;

  double theta_;
  double mu_;
};

/// Validated constructor: theta in [alpha/2, beta/2], mu in [-1, 1].
/// Throws ParameterError naming the violated bound.
QuadraticFunction make_quadratic(double theta, double mu, const ConvexityCertificate& cert);

/// For internal search loops that already keep parameters in range.
QuadraticFunction make_quadratic_unchecked(double theta, double mu) noexcept;

/// theta (x - mu)^2 + weight * log cosh(x - mu). Its second derivative lies in
/// [2 theta, 2 theta + weight], so the certificate is known in closed form.
class LogCoshQuadratic {
 public:
  LogCoshQuadratic(double theta, double weight, double mu, const ConvexityCertificate& cert);

  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double weight() const noexcept { return weight_; }
  [[nodiscard]] double mu() const noexcept { return mu_; }

  [[nodiscard]] double value(double x) const noexcept;
  [[nodiscard]] double gradient(double x) const noexcept;
  [[nodiscard]] double minimizer() const noexcept { return mu_; }

 private:
  double theta_;
  double weight_;
  double mu_;
};

/// Type-erased local cost with user-supplied value and gradient maps.
///
/// Construction checks the stored minimizer: it must lie in [-1, 1] and both
/// the gradient and the value must vanish there (to 1e-12).
class SmoothFunction {
 public:
  using Map = std::function<double(double)>;

  SmoothFunction(Map value, Map gradient, ConvexityCertificate cert, double minimizer);

  template <ScalarCost F>
  static SmoothFunction wrap(F f, const ConvexityCertificate& cert) {
    const double m = f.minimizer();
    return SmoothFunction([f](double x) { return f.value(x); },
                          [f](double x) { return f.gradient(x); }, cert, m);
  }

  [[nodiscard]] double value(double x) const { return value_(x); }
  [[nodiscard]] double gradient(double x) const { return gradient_(x); }
  [[nodiscard]] double minimizer() const noexcept { return minimizer_; }
  [[nodiscard]] const ConvexityCertificate& certificate() const noexcept { return cert_; }

 private:
  Map value_;
  Map gradient_;
  ConvexityCertificate cert_;
  double minimizer_;
};

/// theta ~ U[alpha/2, beta/2], then mu ~ U[-1, 1], drawn in that order.
QuadraticFunction sample_replacement(Rng& rng, const ConvexityCertificate& cert);

/// theta ~ U[alpha/2, beta/2], weight ~ U[0, beta - 2 theta], mu ~ U[-1, 1].
LogCoshQuadratic sample_logcosh_replacement(Rng& rng, const ConvexityCertificate& cert);

struct SecantWitness {
  double x;
  double y;
  double slope;
};

struct CertificationReport {
  bool passed = true;
  std::optional<SecantWitness> witness;

  explicit operator bool() const noexcept { return passed; }
};

/// Randomized check of alpha <= (g(x) - g(y)) / (x - y) <= beta on pairs drawn
/// uniformly from [-radius, radius]. A relative slack of 1e-9 absorbs rounding.
/// Requires sample_count >= 2.
CertificationReport certify(const SmoothFunction& f, int sample_count, Rng& rng,
                            double radius);

}  // namespace openrcd
