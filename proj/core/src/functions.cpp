#include "openrcd/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "openrcd/errors.hpp"

namespace openrcd {

namespace {

constexpr double kCalculusTol = 1e-12;

[[noreturn]] void out_of_range(const char* name, double value, const char* bound) {
  std::ostringstream msg;
  msg.precision(17);
  msg << name << " = " << value << " violates " << bound;
  throw ParameterError(msg.str());
}

void check_location(double mu) {
  if (!(mu >= -1.0 && mu <= 1.0)) out_of_range("mu", mu, "mu in [-1, 1]");
}

// log(cosh(d)) without overflow for large |d|.
double log_cosh(double d) {
  const double a = std::fabs(d);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

ConvexityCertificate::ConvexityCertificate(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) out_of_range("alpha", alpha, "alpha > 0");
  if (!(beta >= alpha) || !std::isfinite(beta)) out_of_range("beta", beta, "beta >= alpha");
}

ConvexityCertificate ConvexityCertificate::from_kappa(double kappa, double alpha) {
  if (!(kappa >= 1.0)) out_of_range("kappa", kappa, "kappa >= 1");
  return {alpha, kappa * alpha};
}

QuadraticFunction make_quadratic(double theta, double mu, const ConvexityCertificate& cert) {
  if (!(theta >= 0.5 * cert.alpha())) out_of_range("theta", theta, "theta >= alpha/2");
  if (!(theta <= 0.5 * cert.beta())) out_of_range("theta", theta, "theta <= beta/2");
  check_location(mu);
  return {theta, mu};
}

QuadraticFunction make_quadratic_unchecked(double theta, double mu) noexcept {
  return {theta, mu};
}

LogCoshQuadratic::LogCoshQuadratic(double theta, double weight, double mu,
                                   const ConvexityCertificate& cert)
    : theta_(theta), weight_(weight), mu_(mu) {
  if (!(2.0 * theta >= cert.alpha())) out_of_range("theta", theta, "2 theta >= alpha");
  if (!(weight >= 0.0)) out_of_range("weight", weight, "weight >= 0");
  // 1e-15 relative slack keeps sampled weight = beta - 2 theta admissible.
  if (!(2.0 * theta + weight <= cert.beta() * (1.0 + 1e-15))) {
    out_of_range("weight", weight, "2 theta + weight <= beta");
  }
  check_location(mu);
}

double LogCoshQuadratic::value(double x) const noexcept {
  const double d = x - mu_;
  return theta_ * d * d + weight_ * log_cosh(d);
}

double LogCoshQuadratic::gradient(double x) const noexcept {
  const double d = x - mu_;
  return 2.0 * theta_ * d + weight_ * std::tanh(d);
}

SmoothFunction::SmoothFunction(Map value, Map gradient, ConvexityCertificate cert,
                               double minimizer)
    : value_(std::move(value)),
      gradient_(std::move(gradient)),
      cert_(cert),
      minimizer_(minimizer) {
  if (!value_ || !gradient_) throw ParameterError("SmoothFunction requires value and gradient maps");
  check_location(minimizer_);
  const double g = gradient_(minimizer_);
  if (!(std::fabs(g) <= kCalculusTol)) {
    out_of_range("gradient(minimizer)", g, "|gradient(minimizer)| <= 1e-12");
  }
  const double v = value_(minimizer_);
  if (!(std::fabs(v) <= kCalculusTol)) {
    out_of_range("value(minimizer)", v, "|value(minimizer)| <= 1e-12");
  }
}

QuadraticFunction sample_replacement(Rng& rng, const ConvexityCertificate& cert) {
  std::uniform_real_distribution<double> curvature(0.5 * cert.alpha(), 0.5 * cert.beta());
  std::uniform_real_distribution<double> location(-1.0, 1.0);
  const double theta = curvature(rng);
  const double mu = location(rng);
  return make_quadratic_unchecked(theta, mu);
}

LogCoshQuadratic sample_logcosh_replacement(Rng& rng, const ConvexityCertificate& cert) {
  std::uniform_real_distribution<double> curvature(0.5 * cert.alpha(), 0.5 * cert.beta());
  const double theta = curvature(rng);
  std::uniform_real_distribution<double> weight(0.0, cert.beta() - 2.0 * theta);
  const double w = weight(rng);
  std::uniform_real_distribution<double> location(-1.0, 1.0);
  const double mu = location(rng);
  return {theta, w, mu, cert};
}

CertificationReport certify(const SmoothFunction& f, int sample_count, Rng& rng,
                            double radius) {
  if (sample_count < 2) throw ParameterError("certify: sample_count must be >= 2");
  if (!(radius > 0.0)) out_of_range("radius", radius, "radius > 0");

  const auto& cert = f.certificate();
  const double slack = 1e-9 * std::max(1.0, cert.beta());
  std::uniform_real_distribution<double> point(-radius, radius);

  CertificationReport report;
  for (int s = 0; s < sample_count; ++s) {
    const double x = point(rng);
    const double y = point(rng);
    if (x == y) continue;
    const double slope = (f.gradient(x) - f.gradient(y)) / (x - y);
    if (slope < cert.alpha() - slack || slope > cert.beta() + slack) {
      report.passed = false;
      report.witness = SecantWitness{x, y, slope};
      return report;
    }
  }
  return report;
}

}  // namespace openrcd
