#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "openrcd/allocation.hpp"
#include "openrcd/bounds.hpp"
#include "openrcd/errors.hpp"
#include "openrcd/worstcase.hpp"

using namespace openrcd;
using Catch::Approx;

namespace {

// Brute force over the corners of [-1, 1]^{n+1} with every curvature fixed.
double corner_oracle(std::size_t n, double theta, double b) {
  const std::size_t dims = n + 1;
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << dims); ++mask) {
    ReplacementInstance inst{{}, make_quadratic_unchecked(theta, 0.0),
                             make_quadratic_unchecked(theta, 0.0), b};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      inst.shared.push_back(make_quadratic_unchecked(theta, (mask >> i) & 1U ? 1.0 : -1.0));
    }
    inst.before = make_quadratic_unchecked(theta, (mask >> (n - 1)) & 1U ? 1.0 : -1.0);
    inst.after = make_quadratic_unchecked(theta, (mask >> n) & 1U ? 1.0 : -1.0);
    best = std::max(best, displacement(inst));
  }
  return best;
}

}  // namespace

TEST_CASE("displacement on hand-checked instances", "[worstcase]") {
  const ConvexityCertificate cert(1.0, 2.0);
  SECTION("unchanged cost") {
    const auto f = make_quadratic(0.7, 0.3, cert);
    const ReplacementInstance inst{{make_quadratic(0.5, -0.2, cert)}, f, f, 1.0};
    CHECK(displacement(inst) == 0.0);
  }
  SECTION("single agent") {
    const ReplacementInstance inst{
        {}, make_quadratic(0.5, -1.0, cert), make_quadratic(0.5, 1.0, cert), 3.0};
    CHECK(displacement(inst) == 0.0);
  }
  SECTION("two agents, location flips") {
    const ReplacementInstance inst{
        {make_quadratic(0.5, 0.0, cert)}, make_quadratic(0.5, -1.0, cert),
        make_quadratic(0.5, 1.0, cert), 0.0};
    CHECK(displacement(inst) == Approx(2.0).epsilon(1e-15));
    std::vector roster = inst.shared;
    roster.push_back(inst.before);
    const auto x1 = closed_form_quadratic_minimizer(roster, 0.0).point;
    CHECK(x1[0] == Approx(0.5));
    CHECK(x1[1] == Approx(-0.5));
    CHECK_NOTHROW(inst.validate(cert));
  }
}

TEST_CASE("validate rejects out-of-range witnesses", "[worstcase]") {
  const ConvexityCertificate cert(1.0, 2.0);
  const ReplacementInstance inst{{make_quadratic_unchecked(2.0, 0.0)},
                                 make_quadratic(0.5, 0.0, cert), make_quadratic(0.5, 0.0, cert),
                                 0.0};
  CHECK_THROWS_AS(inst.validate(cert), ParameterError);
}

TEST_CASE("kappa = 1 search matches the corner oracle", "[worstcase]") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double b : {0.0, 1.0, -2.5}) {
      const auto wc = maximize_displacement(n, 1.0, b, 60);
      CHECK(wc.value == Approx(corner_oracle(n, 0.5, b)).epsilon(1e-12).margin(1e-14));
      CHECK(wc.theta_on_boundary);
    }
  }
}

TEST_CASE("search arguments are validated", "[worstcase]") {
  CHECK_THROWS_AS(maximize_displacement(0, 2.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(maximize_displacement(3, 0.5, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(maximize_displacement(3, 2.0, 1.0, 0), ParameterError);
  const std::vector<std::size_t> none;
  const std::vector<double> kappas{2.0};
  CHECK_THROWS_AS(sweep(none, kappas, 1.0, 10), ParameterError);
}

TEST_CASE("more starts never lower the result", "[worstcase]") {
  double previous = 0.0;
  for (std::size_t budget : {1u, 5u, 50u, 300u, 729u, 760u}) {
    const auto wc = maximize_displacement(5, 3.0, 1.0, budget, 7);
    CHECK(wc.starts_used == budget);
    CHECK(wc.value >= previous * (1.0 - 1e-12));
    previous = std::max(previous, wc.value);
  }
}

TEST_CASE("witnesses are admissible and agree with dual bisection", "[worstcase][property]") {
  for (double kappa : {2.0, 5.0}) {
    const ConvexityCertificate cert(1.0, kappa);
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto wc = maximize_displacement(n, kappa, 1.0, 100, 1);
      REQUIRE_NOTHROW(wc.witness.validate(cert));
      CHECK(wc.value <= prop3_bound(n, kappa, 1.0));
      CHECK(wc.value <= prop5_bound(n, kappa, 1.0));

      std::vector<SmoothFunction> before;
      std::vector<SmoothFunction> after;
      for (const auto& f : wc.witness.shared) {
        before.push_back(SmoothFunction::wrap(f, cert));
        after.push_back(SmoothFunction::wrap(f, cert));
      }
      before.push_back(SmoothFunction::wrap(wc.witness.before, cert));
      after.push_back(SmoothFunction::wrap(wc.witness.after, cert));
      const auto x1 = dual_bisection_minimizer(before, 1.0);
      const auto x2 = dual_bisection_minimizer(after, 1.0);
      CHECK(squared_distance(x1.point.values(), x2.point.values()) ==
            Approx(wc.value).epsilon(1e-8));
    }
  }
}

TEST_CASE("sweep rows follow kappa-major order", "[worstcase]") {
  const std::vector<std::size_t> ns{2, 3, 4};
  const std::vector<double> kappas{2.0, 5.0};
  const auto rows = sweep(ns, kappas, 1.0, 30, 2);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].kappa == 2.0);
  CHECK(rows[2].n == 4);
  CHECK(rows[3].kappa == 5.0);
  for (const auto& r : rows) {
    CHECK(r.empirical_max <= std::min(r.prop3, r.prop5));
    CHECK(r.conjecture == Approx(conjecture_curve(static_cast<double>(r.n), r.kappa)));
  }
}
