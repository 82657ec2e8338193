#include "openrcd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "openrcd/allocation.hpp"
#include "openrcd/errors.hpp"

namespace openrcd {

namespace {

void require_n(std::size_t n, std::size_t min, const char* where) {
  if (n < min) {
    throw ParameterError(std::string(where) + ": n must be >= " + std::to_string(min));
  }
}

void require_kappa(double kappa, const char* where) {
  if (!(kappa >= 1.0)) throw ParameterError(std::string(where) + ": kappa must be >= 1");
}

void require_probability(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(where) + ": p_U must be in [0, 1]");
}

double margin(std::size_t n, double kappa) {
  return 1.0 / (static_cast<double>(n - 1) * kappa);
}

double shift_factor(std::size_t n, double kappa, double b) {
  return 1.0 + 1.0 / std::sqrt(kappa) + std::fabs(b) / static_cast<double>(n);
}

}  // namespace

Level Level::finite(double v) {
  if (!std::isfinite(v)) throw std::logic_error("Level::finite given a non-finite value");
  Level l;
  l.finite_ = true;
  l.value_ = v;
  return l;
}

double Level::value() const {
  if (!finite_) throw std::logic_error("Level is unbounded");
  return value_;
}

double closed_system_rate(std::size_t n, double alpha, double h) {
  require_n(n, 2, "closed_system_rate");
  if (!(alpha > 0.0)) throw ParameterError("closed_system_rate: alpha must be > 0");
  if (!(h > 0.0)) throw ParameterError("closed_system_rate: h must be > 0");
  return 1.0 - h * alpha / static_cast<double>(n - 1);
}

OpenRate open_rate_and_gamma(std::size_t n, double kappa, double b, double p_update) {
  require_n(n, 2, "open_rate_and_gamma");
  require_kappa(kappa, "open_rate_and_gamma");
  require_probability(p_update, "open_rate_and_gamma");
  const double a = shift_factor(n, kappa, b);
  return {2.0 - p_update * (1.0 + margin(n, kappa)),
          8.0 * (1.0 - p_update) * a * a * static_cast<double>(n) * kappa};
}

double quadratic_gamma_prime(std::size_t n, double kappa, double b, double p_update) {
  require_n(n, 2, "quadratic_gamma_prime");
  require_kappa(kappa, "quadratic_gamma_prime");
  require_probability(p_update, "quadratic_gamma_prime");
  const double dn = static_cast<double>(n);
  const double k = kappa;
  const double bn = std::fabs(b) + dn;
  const double head = (k * k * k + k * dn - 2.0) / (k * dn);
  const double tail = bn * bn * (k - 1.0) * (k - 1.0) * k * k * (k * k * dn * dn + dn - 1.0) /
                      (dn * dn * dn * dn);
  return (1.0 - p_update) * 8.0 * (head + tail);
}

StabilityThresholds stability_thresholds(std::size_t n, double kappa) {
  require_n(n, 2, "stability_thresholds");
  require_kappa(kappa, "stability_thresholds");
  const double kn = kappa * static_cast<double>(n - 1);
  return {kn / (kn + 1.0), 1.0 / kn};
}

EventProbabilities event_probabilities(std::size_t n, double p_update) {
  require_n(n, 2, "event_probabilities");
  require_probability(p_update, "event_probabilities");
  const double dn = static_cast<double>(n);
  return {2.0 * p_update / (dn * (dn - 1.0)), (1.0 - p_update) / dn};
}

bool is_stable(std::size_t n, double kappa, double p_update) {
  return p_update > stability_thresholds(n, kappa).p_update_min;
}

bool is_stable_per_probability(std::size_t n, double kappa, double p_update) {
  const auto p = event_probabilities(n, p_update);
  return p.per_agent < p.per_edge / (2.0 * kappa);
}

Level replacement_ratio(double p_update) {
  require_probability(p_update, "replacement_ratio");
  if (p_update == 0.0) return Level::unbounded();
  return Level::finite((1.0 - p_update) / p_update);
}

Level steady_state_gamma(std::size_t n, double kappa, double b, double rho) {
  require_n(n, 2, "steady_state_gamma");
  require_kappa(kappa, "steady_state_gamma");
  if (!(rho >= 0.0)) throw ParameterError("steady_state_gamma: rho must be >= 0");
  const double c = margin(n, kappa);
  if (!(rho < c)) return Level::unbounded();
  return Level::finite(8.0 * static_cast<double>(n) * kappa * shift_factor(n, kappa, b) * rho /
                       (c - rho));
}

Level gamma_from_recursion(std::size_t n, double kappa, double b, double p_update) {
  const auto [rate, gamma] = open_rate_and_gamma(n, kappa, b, p_update);
  if (!(rate < 1.0)) return Level::unbounded();
  return Level::finite(gamma / (1.0 - rate));
}

double envelope_rate(std::size_t n, double kappa, double rho) {
  require_n(n, 2, "envelope_rate");
  require_kappa(kappa, "envelope_rate");
  return 1.0 + (rho - margin(n, kappa)) / (1.0 + rho);
}

std::vector<double> steady_state_envelope(std::size_t n, double kappa, double b, double rho,
                                          double c0, std::size_t horizon) {
  const Level level = steady_state_gamma(n, kappa, b, rho);
  if (!level.is_finite()) {
    throw ParameterError("steady_state_envelope: rho is outside the stable region");
  }
  const double g = level.value();
  const double rate = envelope_rate(n, kappa, rho);
  std::vector<double> out(horizon + 1);
  out[0] = c0;
  double power = 1.0;
  for (std::size_t k = 1; k <= horizon; ++k) {
    power *= rate;
    out[k] = g + power * (c0 - g);
  }
  return out;
}

std::vector<double> recursion_envelope(double rate, double additive, double c0,
                                       std::size_t horizon) {
  std::vector<double> out(horizon + 1);
  out[0] = c0;
  for (std::size_t k = 1; k <= horizon; ++k) out[k] = rate * out[k - 1] + additive;
  return out;
}

double prop3_bound(std::size_t n, double kappa, double b) {
  require_n(n, 1, "prop3_bound");
  require_kappa(kappa, "prop3_bound");
  const double a = shift_factor(n, kappa, b);
  return 4.0 * static_cast<double>(n) * kappa * a * a;
}

double prop4_map(double c, std::size_t n, double kappa, double b) {
  if (!(c >= 0.0)) throw ParameterError("prop4_map: C must be >= 0");
  return 2.0 * c + 2.0 * prop3_bound(n, kappa, b);
}

double prop5_bound(std::size_t n, double kappa, double b) {
  require_n(n, 1, "prop5_bound");
  require_kappa(kappa, "prop5_bound");
  const double dn = static_cast<double>(n);
  const double k = kappa;
  const double bn = std::fabs(b) + dn;
  return 8.0 * (k * k * k + k * dn - 2.0) / (k * dn) +
         8.0 * bn * bn * (k - 1.0) * (k - 1.0) * k * k * (k * k * dn * dn + dn - 1.0) /
             (dn * dn * dn * dn);
}

double conjecture_curve(double n, double kappa, double c1, double c2) {
  if (!(n + kappa + c2 > 0.0)) throw ParameterError("conjecture_curve: n + kappa + c2 must be > 0");
  return (kappa + 1.0) * (kappa + 1.0) - c1 * kappa * kappa * kappa / (n + kappa + c2);
}

BoundSet evaluate_bounds(const BoundParameters& p) {
  require_n(p.n, 2, "evaluate_bounds");
  if (!(p.alpha > 0.0 && p.beta >= p.alpha)) {
    throw ParameterError("evaluate_bounds: need 0 < alpha <= beta");
  }
  const double kappa = p.beta / p.alpha;
  const auto open = open_rate_and_gamma(p.n, kappa, p.b, p.p_update);
  const auto thresholds = stability_thresholds(p.n, kappa);
  const Level rho = replacement_ratio(p.p_update);

  BoundSet s{
      .closed_rate = closed_system_rate(p.n, p.alpha, p.h),
      .open_rate = open.rate,
      .gamma = open.gamma,
      .gamma_prime = quadratic_gamma_prime(p.n, kappa, p.b, p.p_update),
      .gamma_ss = rho.is_finite() ? steady_state_gamma(p.n, kappa, p.b, rho.value())
                                  : Level::unbounded(),
      .gamma_recursion = gamma_from_recursion(p.n, kappa, p.b, p.p_update),
      .r_ball = minimizer_ball_radius(p.n, kappa, p.b),
      .p_update_threshold = thresholds.p_update_min,
      .rho_replace_threshold = thresholds.rho_replace_max,
      .stable = p.p_update > thresholds.p_update_min,
      .gamma_readings_agree = false,
  };
  if (s.gamma_ss.is_finite() && s.gamma_recursion.is_finite()) {
    const double a = s.gamma_ss.value();
    const double r = s.gamma_recursion.value();
    s.gamma_readings_agree = std::fabs(a - r) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(r)});
  } else {
    s.gamma_readings_agree = s.gamma_ss.is_finite() == s.gamma_recursion.is_finite();
  }
  return s;
}

}  // namespace openrcd
