#include "openrcd/worstcase.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "openrcd/allocation.hpp"
#include "openrcd/bounds.hpp"
#include "openrcd/errors.hpp"
#include "openrcd/random.hpp"

namespace openrcd {

namespace {

constexpr int kThetaGrid = 17;
constexpr int kGoldenIterations = 40;
constexpr int kMaxSweeps = 200;

// Search point layout: [theta_1..theta_{n-1}, mu_1..mu_{n-1},
//                       theta_before, mu_before, theta_after, mu_after].
class SearchSpace {
 public:
  SearchSpace(std::size_t n, double kappa, double b)
      : n_(n), lo_(0.5), hi_(0.5 * kappa), b_(b) {}

  [[nodiscard]] std::size_t dims() const noexcept { return 2 * (n_ - 1) + 4; }
  [[nodiscard]] double theta_lo() const noexcept { return lo_; }
  [[nodiscard]] double theta_hi() const noexcept { return hi_; }

  [[nodiscard]] bool is_theta(std::size_t c) const noexcept {
    const std::size_t s = n_ - 1;
    return c < s || c == 2 * s || c == 2 * s + 2;
  }

  // Closed-form displacement evaluated through the shared sums; O(n).
  [[nodiscard]] double evaluate(const std::vector<double>& p) const {
    const std::size_t s = n_ - 1;
    double inv_sum = 0.0;
    double inv_sq = 0.0;
    double loc = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const double inv = 1.0 / p[i];
      inv_sum += inv;
      inv_sq += inv * inv;
      loc += p[s + i];
    }
    const double tb = p[2 * s];
    const double mb = p[2 * s + 1];
    const double ta = p[2 * s + 2];
    const double ma = p[2 * s + 3];
    const double zeta_b = inv_sum + 1.0 / tb;
    const double zeta_a = inv_sum + 1.0 / ta;
    const double scale_b = (b_ - loc - mb) / zeta_b;
    const double scale_a = (b_ - loc - ma) / zeta_a;
    const double common = scale_b - scale_a;
    const double last = (mb + scale_b / tb) - (ma + scale_a / ta);
    return common * common * inv_sq + last * last;
  }

  [[nodiscard]] ReplacementInstance to_instance(const std::vector<double>& p) const {
    const std::size_t s = n_ - 1;
    ReplacementInstance inst{{}, make_quadratic_unchecked(p[2 * s], p[2 * s + 1]),
                             make_quadratic_unchecked(p[2 * s + 2], p[2 * s + 3]), b_};
    inst.shared.reserve(s);
    for (std::size_t i = 0; i < s; ++i) inst.shared.push_back(make_quadratic_unchecked(p[i], p[s + i]));
    return inst;
  }

  [[nodiscard]] std::vector<double> structured_start(std::size_t index) const {
    // Six ternary digits select low / mid / high for each parameter group.
    std::array<int, 6> level{};
    for (auto& l : level) {
      l = static_cast<int>(index % 3);
      index /= 3;
    }
    const double thetas[3] = {lo_, 0.5 * (lo_ + hi_), hi_};
    const double locs[3] = {-1.0, 0.0, 1.0};
    const std::size_t s = n_ - 1;
    std::vector<double> p(dims());
    for (std::size_t i = 0; i < s; ++i) {
      p[i] = thetas[level[0]];
      p[s + i] = locs[level[1]];
    }
    p[2 * s] = thetas[level[2]];
    p[2 * s + 1] = locs[level[3]];
    p[2 * s + 2] = thetas[level[4]];
    p[2 * s + 3] = locs[level[5]];
    return p;
  }

  [[nodiscard]] std::vector<double> random_start(Rng& rng) const {
    std::uniform_real_distribution<double> theta(lo_, hi_);
    std::uniform_real_distribution<double> loc(-1.0, 1.0);
    std::vector<double> p(dims());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = is_theta(c) ? theta(rng) : loc(rng);
    return p;
  }

 private:
  std::size_t n_;
  double lo_;
  double hi_;
  double b_;
};

bool improves(double candidate, double current) {
  return candidate > current + 1e-15 * (1.0 + std::fabs(current));
}

// Best value of coordinate c over [lo, hi]: coarse grid, then golden-section
// refinement around the best grid cell.
double ascend_theta(const SearchSpace& space, std::vector<double>& p, std::size_t c,
                    double current) {
  const double lo = space.theta_lo();
  const double hi = space.theta_hi();
  if (hi <= lo) return current;
  const double original = p[c];
  double best_x = original;
  double best_v = current;
  const double step = (hi - lo) / (kThetaGrid - 1);
  int best_cell = -1;
  for (int g = 0; g < kThetaGrid; ++g) {
    p[c] = lo + step * g;
    const double v = space.evaluate(p);
    if (improves(v, best_v)) {
      best_v = v;
      best_x = p[c];
      best_cell = g;
    }
  }
  if (best_cell >= 0) {
    double a = std::max(lo, best_x - step);
    double d = std::min(hi, best_x + step);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = d - inv_phi * (d - a);
    double x2 = a + inv_phi * (d - a);
    p[c] = x1;
    double f1 = space.evaluate(p);
    p[c] = x2;
    double f2 = space.evaluate(p);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (f1 > f2) {
        d = x2;
        x2 = x1;
        f2 = f1;
        x1 = d - inv_phi * (d - a);
        p[c] = x1;
        f1 = space.evaluate(p);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (d - a);
        p[c] = x2;
        f2 = space.evaluate(p);
      }
    }
    const double xm = f1 > f2 ? x1 : x2;
    const double fm = std::max(f1, f2);
    if (improves(fm, best_v)) {
      best_v = fm;
      best_x = xm;
    }
  }
  p[c] = best_x;
  return best_v;
}

// The displacement is a convex quadratic in every location, so its maximum
// along a location coordinate sits at -1 or 1.
double ascend_location(const SearchSpace& space, std::vector<double>& p, std::size_t c,
                       double current) {
  const double original = p[c];
  double best_x = original;
  double best_v = current;
  for (double x : {-1.0, 1.0}) {
    p[c] = x;
    const double v = space.evaluate(p);
    if (improves(v, best_v)) {
      best_v = v;
      best_x = x;
    }
  }
  p[c] = best_x;
  return best_v;
}

double coordinate_ascent(const SearchSpace& space, std::vector<double>& p) {
  double v = space.evaluate(p);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double start = v;
    for (std::size_t c = 0; c < p.size(); ++c) {
      v = space.is_theta(c) ? ascend_theta(space, p, c, v) : ascend_location(space, p, c, v);
    }
    if (!improves(v, start)) break;
  }
  return v;
}

bool thetas_on_boundary(const SearchSpace& space, const std::vector<double>& p) {
  const double tol = 1e-9 * space.theta_hi();
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (!space.is_theta(c)) continue;
    if (std::fabs(p[c] - space.theta_lo()) > tol && std::fabs(p[c] - space.theta_hi()) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

void ReplacementInstance::validate(const ConvexityCertificate& cert) const {
  auto check = [&](const QuadraticFunction& f) { (void)make_quadratic(f.theta(), f.mu(), cert); };
  for (const auto& f : shared) check(f);
  check(before);
  check(after);
}

double displacement(const ReplacementInstance& inst) {
  std::vector<QuadraticFunction> roster = inst.shared;
  roster.push_back(inst.before);
  const MinimizerResult first = closed_form_quadratic_minimizer(roster, inst.b);
  roster.back() = inst.after;
  const MinimizerResult second = closed_form_quadratic_minimizer(roster, inst.b);
  return squared_distance(first.point.values(), second.point.values());
}

WorstCaseResult maximize_displacement(std::size_t n, double kappa, double b,
                                      std::size_t search_budget, std::uint64_t seed) {
  if (n < 1) throw ParameterError("maximize_displacement: n must be >= 1");
  if (!(kappa >= 1.0)) throw ParameterError("maximize_displacement: kappa must be >= 1");
  if (search_budget < 1) throw ParameterError("maximize_displacement: search_budget must be >= 1");

  const SearchSpace space(n, kappa, b);
  Rng rng = make_rng(seed);

  std::vector<double> best_point;
  double best_value = -1.0;
  for (std::size_t s = 0; s < search_budget; ++s) {
    std::vector<double> p =
        s < kStructuredStarts ? space.structured_start(s) : space.random_start(rng);
    const double v = coordinate_ascent(space, p);
    if (v > best_value) {
      best_value = v;
      best_point = std::move(p);
    }
  }

  WorstCaseResult result{0.0, space.to_instance(best_point), thetas_on_boundary(space, best_point),
                         search_budget};
  result.value = displacement(result.witness);
  return result;
}

std::vector<SweepRow> sweep(std::span<const std::size_t> ns, std::span<const double> kappas,
                            double b, std::size_t search_budget, std::uint64_t seed) {
  if (ns.empty() || kappas.empty()) throw ParameterError("sweep: ranges must be nonempty");
  std::vector<SweepRow> rows;
  rows.reserve(ns.size() * kappas.size());
  for (double kappa : kappas) {
    for (std::size_t n : ns) {
      const WorstCaseResult wc = maximize_displacement(n, kappa, b, search_budget, seed);
      rows.push_back({n, kappa, wc.value, prop3_bound(n, kappa, b), prop5_bound(n, kappa, b),
                      conjecture_curve(static_cast<double>(n), kappa),
                      wc.theta_on_boundary});
    }
  }
  return rows;
}

}  // namespace openrcd
