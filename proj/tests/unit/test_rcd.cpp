#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "openrcd/allocation.hpp"
#include "openrcd/bounds.hpp"
#include "openrcd/errors.hpp"
#include "openrcd/rcd.hpp"

using namespace openrcd;
using Catch::Approx;

TEST_CASE("pair selection validates indices", "[rcd]") {
  const PairSelection sel(0, 3, 5);
  CHECK(sel.probability() == Approx(0.1));
  CHECK_THROWS_AS(PairSelection(2, 2, 5), ParameterError);
  CHECK_THROWS_AS(PairSelection(0, 5, 5), ParameterError);
}

TEST_CASE("edge enumeration covers each pair once", "[rcd]") {
  for (std::size_t n : {2u, 3u, 7u}) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < edge_count(n); ++e) {
      const auto sel = edge_from_index(e, n);
      CHECK(sel.i() < sel.j());
      seen.insert({sel.i(), sel.j()});
    }
    CHECK(seen.size() == edge_count(n));
  }
  CHECK_THROWS_AS(edge_from_index(edge_count(4), 4), ParameterError);
}

TEST_CASE("sampled edges are roughly uniform", "[rcd]") {
  Rng rng = make_rng(5);
  constexpr std::size_t n = 4;
  std::vector<int> counts(n * n, 0);
  constexpr int draws = 60000;
  for (int d = 0; d < draws; ++d) {
    const auto sel = sample_edge(rng, n);
    ++counts[sel.i() * n + sel.j()];
  }
  for (std::size_t e = 0; e < edge_count(n); ++e) {
    const auto sel = edge_from_index(e, n);
    CHECK(counts[sel.i() * n + sel.j()] == Approx(draws / 6.0).epsilon(0.05));
  }
}

TEST_CASE("step size must lie in (0, 1/beta]", "[rcd]") {
  const ConvexityCertificate cert(1.0, 2.0);
  CHECK(StepConfig::standard(cert).h() == 0.5);
  CHECK_NOTHROW(StepConfig(0.25, cert));
  CHECK_THROWS_AS(StepConfig(0.0, cert), ParameterError);
  CHECK_THROWS_AS(StepConfig(0.6, cert), ParameterError);
}

TEST_CASE("pair step on x squared solves the pair subproblem", "[rcd]") {
  const ConvexityCertificate cert(2.0, 2.0);
  const std::vector fs{make_quadratic(1.0, 0.0, cert), make_quadratic(1.0, 0.0, cert)};
  const Allocation x({1.0, 3.0}, 4.0);
  const auto next =
      rcd_pair_step<QuadraticFunction>(x, fs, PairSelection(0, 1, 2), StepConfig::standard(cert));
  CHECK(next[0] == 2.0);
  CHECK(next[1] == 2.0);

  // Grid search over the feasible line x_0 + x_1 = 4.
  const auto cost = [&](double a) { return fs[0].value(a) + fs[1].value(4.0 - a); };
  double best_a = 0.0;
  double best = cost(0.0);
  for (int g = 0; g <= 4000; ++g) {
    const double a = g * 1e-3;
    if (cost(a) < best) {
      best = cost(a);
      best_a = a;
    }
  }
  CHECK(best_a == Approx(next[0]).margin(1e-3));
}

TEST_CASE("the constrained minimizer is a fixed point of every pair step", "[rcd]") {
  Rng rng = make_rng(8);
  const ConvexityCertificate cert(1.0, 3.0);
  std::vector<QuadraticFunction> fs;
  for (int i = 0; i < 5; ++i) fs.push_back(sample_replacement(rng, cert));
  const auto xstar = closed_form_quadratic_minimizer(fs, 1.5).point;
  for (std::size_t e = 0; e < edge_count(5); ++e) {
    const auto next = rcd_pair_step<QuadraticFunction>(xstar, fs, edge_from_index(e, 5),
                                                       StepConfig::standard(cert));
    for (std::size_t i = 0; i < 5; ++i) CHECK(next[i] == Approx(xstar[i]).margin(1e-14));
  }
}

TEST_CASE("projected pair direction", "[rcd]") {
  SECTION("one-sided weight keeps s_i fixed") {
    const auto d = projected_pair_direction(2.0, 5.0, 1.0, 0.0, 1.0);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == -5.0);
  }
  SECTION("zero gradients do not move") {
    const auto d = projected_pair_direction(0.0, 0.0, 0.3, 2.0, 1.0);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 0.0);
  }
  SECTION("degenerate weights are rejected") {
    CHECK_THROWS_AS(projected_pair_direction(1.0, 1.0, 0.0, 0.0, 1.0), ParameterError);
  }
}

TEST_CASE("unit weights reproduce the sum-preserving step", "[rcd][property]") {
  Rng rng = make_rng(9);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  const ConvexityCertificate cert(1.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<QuadraticFunction> fs;
    std::vector<double> v(4);
    for (auto& c : v) {
      fs.push_back(sample_replacement(rng, cert));
      c = coord(rng);
    }
    double s = 0.0;
    for (double c : v) s += c;
    const Allocation x(v, s);
    const auto sel = sample_edge(rng, 4);
    const StepConfig step(0.2, cert);
    const auto plain = rcd_pair_step<QuadraticFunction>(x, fs, sel, step);
    const auto weighted = general_weight_pair_step<QuadraticFunction>(v, fs, 1.0, 1.0, sel, step);
    for (std::size_t i = 0; i < 4; ++i) CHECK(weighted[i] == Approx(plain[i]).margin(1e-14));
  }
}

TEST_CASE("selection matrices and the Laplacian identity", "[rcd]") {
  const auto q = selection_matrix(0, 1, 2);
  CHECK(q(0, 0) == 0.5);
  CHECK(q(1, 1) == 0.5);
  CHECK(q(0, 1) == -0.5);
  CHECK(q(1, 0) == -0.5);
  for (std::size_t n = 2; n <= 12; ++n) CHECK(laplacian_identity_check(n));
  CHECK_THROWS_AS(laplacian_identity_check(1), ParameterError);
}

TEST_CASE("selection matrices have eigenvalues 0 and 1", "[rcd]") {
  // Q is symmetric idempotent with trace 1: one unit eigenvalue, the rest 0.
  // Check Q v = v for v = e_i - e_j and Q v = 0 for v orthogonal to it.
  constexpr std::size_t n = 5;
  for (std::size_t e = 0; e < edge_count(n); ++e) {
    const auto sel = edge_from_index(e, n);
    const auto q = selection_matrix(sel.i(), sel.j(), n);
    double trace = 0.0;
    for (std::size_t r = 0; r < n; ++r) trace += q(r, r);
    CHECK(trace == Approx(1.0));
    std::vector<double> unit(n, 0.0);
    unit[sel.i()] = 1.0;
    unit[sel.j()] = -1.0;
    std::vector<double> ones(n, 1.0);
    for (std::size_t r = 0; r < n; ++r) {
      double qu = 0.0;
      double q1 = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        qu += q(r, c) * unit[c];
        q1 += q(r, c) * ones[c];
      }
      CHECK(qu == Approx(unit[r]));
      CHECK(q1 == 0.0);
    }
  }
}

TEST_CASE("exact one-step expectation", "[rcd]") {
  const ConvexityCertificate cert(1.0, 1.0);
  const std::vector fs{make_quadratic(0.5, 0.0, cert), make_quadratic(0.5, 0.0, cert)};
  const std::vector<double> x{1.0, -1.0};
  const std::vector<double> xstar{0.0, 0.0};
  const StepConfig step(1.0, cert);
  CHECK(exact_onestep_expectation<QuadraticFunction>(x, fs, xstar, step) == 0.0);
  CHECK(exact_onestep_expectation<QuadraticFunction>(xstar, fs, xstar, step) == 0.0);
}

TEST_CASE("property: expected one-step contraction", "[rcd][property]") {
  Rng rng = make_rng(10);
  std::uniform_int_distribution<std::size_t> size(2, 10);
  std::uniform_real_distribution<double> kappa(1.0, 10.0);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cert = ConvexityCertificate::from_kappa(kappa(rng));
    const std::size_t n = size(rng);
    std::vector<QuadraticFunction> fs;
    std::vector<double> x(n);
    double s = 0.0;
    for (auto& c : x) {
      fs.push_back(sample_replacement(rng, cert));
      c = coord(rng);
      s += c;
    }
    const auto xstar = closed_form_quadratic_minimizer(fs, s).point;
    const double h = trial % 2 == 0 ? 1.0 / cert.beta() : 0.5 / cert.beta();
    const StepConfig step(h, cert);
    const double before = squared_distance(x, xstar.values());
    const double after = exact_onestep_expectation<QuadraticFunction>(x, fs, xstar.values(), step);
    CHECK(after <= closed_system_rate(n, cert.alpha(), h) * before + 1e-12);
  }
}

TEST_CASE("property: pair steps descend and preserve the budget", "[rcd][property]") {
  Rng rng = make_rng(11);
  const ConvexityCertificate cert(1.0, 5.0);
  constexpr std::size_t n = 6;
  std::vector<QuadraticFunction> fs;
  for (std::size_t i = 0; i < n; ++i) fs.push_back(sample_replacement(rng, cert));
  std::vector<double> x(n, 0.5);
  const double b = 3.0;
  const StepConfig step = StepConfig::standard(cert);
  const std::span<const QuadraticFunction> roster(fs);
  double cost = total_cost(roster, std::span<const double>(x));
  for (int k = 0; k < 20000; ++k) {
    apply_pair_step<QuadraticFunction>(x, roster, sample_edge(rng, n), step);
    const double next = total_cost(roster, std::span<const double>(x));
    REQUIRE(next <= cost + 1e-12);
    // Occasional replacements keep the roster from settling.
    if (k % 17 == 0) fs[k % n] = sample_replacement(rng, cert);
    cost = total_cost(roster, std::span<const double>(x));
  }
  double s = 0.0;
  for (double v : x) s += v;
  CHECK(std::fabs(s - b) <= 1e-12);
}

TEST_CASE("distance to the minimizer can grow on a single step", "[rcd]") {
  // Fixed three-agent witness: a descent step that moves away from x*.
  const ConvexityCertificate cert(1.0, 10.0);
  const std::vector fs{make_quadratic(5.0, 0.0, cert), make_quadratic(0.5, 0.0, cert),
                       make_quadratic(0.5, 0.0, cert)};
  const std::vector<double> x{0.2, 1.0, -1.2};
  const auto xstar = closed_form_quadratic_minimizer(fs, 0.0).point;
  const auto next = rcd_pair_step<QuadraticFunction>(Allocation(x, 0.0), fs, PairSelection(0, 1, 3),
                                                     StepConfig::standard(cert));
  const std::span<const QuadraticFunction> roster(fs);
  CHECK(total_cost(roster, next.values()) <= total_cost(roster, std::span<const double>(x)));
  CHECK(squared_distance(next.values(), xstar.values()) >
        squared_distance(x, xstar.values()));
}
