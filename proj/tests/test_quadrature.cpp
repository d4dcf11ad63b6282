#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "casimir/closed_form.hpp"
#include "casimir/integrand.hpp"
#include "casimir/quadrature.hpp"
#include "oracle.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

double relative(double got, double want) { return std::abs(got - want) / std::abs(want); }

IntegralResult pc_cavity(FieldKind kind, double a, double z, const QuadratureConfig& cfg = {}) {
  const auto pc = DielectricModel::perfect_conductor();
  return integrate_semi_infinite(
      [&](double u, double t) { return cavity_integrand(kind, pc, a, z, {u, t}); },
      2.0 * std::min(z, a - z), cfg);
}

IntegralResult drude_single(FieldKind kind, double wp, double z, const QuadratureConfig& cfg = {}) {
  const auto model = DielectricModel::drude(wp);
  return integrate_semi_infinite(
      [&](double u, double t) { return single_integrand(kind, model, z, {u, t}); }, 2.0 * z, cfg);
}

}  // namespace

TEST_CASE("zero integrand") {
  const auto res = integrate_semi_infinite([](double, double) { return 0.0; }, 1.0);
  CHECK(res.value == 0.0);
  CHECK(res.error_estimate == 0.0);
  CHECK(res.evaluations > 0);
  CHECK(res.truncation_u == doctest::Approx(60.0));
}

TEST_CASE("gamma-function moment") {
  for (double z : {0.05, 0.5, 3.0}) {
    const double c = 1.0 / (4.0 * pi * pi);
    const auto res = integrate_semi_infinite(
        [&](double u, double t) { return c * u * u * u * std::exp(-2.0 * u * z) * (1.0 - t * t); },
        2.0 * z);
    const double exact = c * (2.0 / 3.0) * 6.0 / std::pow(2.0 * z, 4);
    CHECK(relative(res.value, exact) < 1e-10);
    CHECK(res.error_estimate >= 0.0);
    CHECK(res.error_estimate <= 1e-8 * std::abs(res.value));
    CHECK(std::abs(res.value - exact) <= res.error_estimate + 1e-14 * exact);
  }
}

TEST_CASE("invalid decay scales") {
  auto f = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(integrate_semi_infinite(f, 0.0), InvalidDecayScale);
  CHECK_THROWS_AS(integrate_semi_infinite(f, -1.0), InvalidDecayScale);
  CHECK_THROWS_AS(integrate_semi_infinite(f, NAN), InvalidDecayScale);
  CHECK_THROWS_AS(integrate_semi_infinite(f, 1e-9), DivergesAtBoundary);
  QuadratureConfig loose;
  loose.decay_floor = 0.0;
  CHECK_NOTHROW(integrate_semi_infinite([](double u, double) { return std::exp(-u * 1e-9); }, 1e-9,
                                        loose));
}

TEST_CASE("configuration invariants") {
  auto rejects = [](auto mutate) {
    QuadratureConfig cfg;
    mutate(cfg);
    return [cfg] { cfg.validate(); };
  };
  CHECK_THROWS_AS(rejects([](auto& c) { c.rel_tol = 0.0; })(), DomainError);
  CHECK_THROWS_AS(rejects([](auto& c) { c.abs_tol = -1.0; })(), DomainError);
  CHECK_THROWS_AS(rejects([](auto& c) { c.tail_exponent_budget = 29.0; })(), DomainError);
  CHECK_THROWS_AS(rejects([](auto& c) { c.max_subdivisions = 9; })(), DomainError);
  CHECK_THROWS_AS(rejects([](auto& c) { c.inner_rule_order = 1; })(), DomainError);
  CHECK_THROWS_AS(rejects([](auto& c) { c.decay_floor = -1.0; })(), DomainError);
  CHECK_NOTHROW(QuadratureConfig{}.validate());
}

TEST_CASE("exhausted subdivisions report the best estimate") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-15;
  cfg.abs_tol = 0.0;
  cfg.max_subdivisions = 10;
  auto wiggly = [](double u, double) { return std::sin(400.0 * u) * u * u * u * std::exp(-u); };
  try {
    integrate_semi_infinite(wiggly, 1.0, cfg);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(std::isfinite(e.best().value));
    CHECK(e.best().error_estimate > 0.0);
    CHECK(e.best().evaluations > 0);
  }
}

TEST_CASE("Gauss-Legendre rules are exact for polynomials") {
  std::vector<double> x, w;
  for (int n : {1, 2, 5, 16, 64}) {
    gauss_legendre(n, x, w);
    REQUIRE(x.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
    for (int degree = 0; degree < 2 * n; ++degree) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += w[i] * std::pow(x[i], degree);
      const double exact = degree % 2 == 0 ? 2.0 / (degree + 1) : 0.0;
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("graded rule resolves a boundary layer at t = 0") {
  const GradedLegendreRule rule(16, 40);
  double total = 0.0;
  for (double w : rule.weights()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  for (double t : rule.nodes()) CHECK((t >= 0.0 && t <= 1.0));

  for (double width : {1.0, 1e-2, 1e-5, 1e-9}) {
    const double value = rule.integrate([width](double t) { return width / (width * width + t * t); });
    CHECK(relative(value, std::atan(1.0 / width)) < 1e-12);
  }
}

TEST_CASE("scalar adaptive integration") {
  const std::vector<double> none;
  const auto res = integrate_adaptive([](double x) { return std::exp(-x) * std::cos(3.0 * x); }, 0.0,
                                      10.0, none, 1e-12, 0.0, 200);
  const double exact = (1.0 - std::exp(-10.0) * (std::cos(30.0) - 3.0 * std::sin(30.0))) / 10.0;
  CHECK(relative(res.value, exact) < 1e-12);

  const std::vector<double> kink{0.3};
  const auto abs_res =
      integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kink, 1e-13, 0.0, 50);
  CHECK(abs_res.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("perfect-conductor cavity energy") {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double frac : {0.1, 0.37, 0.5}) {
      const auto res = pc_cavity(FieldKind::EnergyDensity, a, frac * a);
      CHECK(relative(res.value, -pi * pi / (720.0 * std::pow(a, 4))) < 1e-8);
    }
  }
}

TEST_CASE("engine agrees with the fixed-grid oracle") {
  const oracle::Material drude{oracle::Material::Drude, 1.0};
  CHECK(relative(drude_single(FieldKind::EnergyDensity, 1.0, 1.0).value, 0.00283914418740027) < 1e-8);
  CHECK(relative(drude_single(FieldKind::ESquared, 1.0, 1.0).value, 0.00784173236441188) < 1e-8);
  CHECK(relative(drude_single(FieldKind::BSquared, 1.0, 1.0).value, -0.00216344398961134) < 1e-8);
  CHECK(relative(drude_single(FieldKind::ESquared, 1.0, 1.0).value,
                 oracle::single_integral(oracle::Kind::E2, drude, 1.0)) < 1e-8);

  const oracle::Material wide{oracle::Material::Drude, 30.0};
  const auto model = DielectricModel::drude(30.0);
  const auto res = integrate_semi_infinite(
      [&](double u, double t) { return cavity_integrand(FieldKind::BSquared, model, 1.0, 0.2, {u, t}); },
      0.4);
  CHECK(relative(res.value, oracle::cavity_integral(oracle::Kind::B2, wide, 1.0, 0.2)) < 1e-8);
}

TEST_CASE("tighter tolerance never moves away from the closed form") {
  const double exact = pc_cavity_e2(0.3, 1.0);
  double previous = INFINITY;
  for (double rel = 1e-3; rel > 1e-12; rel *= 0.5) {
    QuadratureConfig cfg;
    cfg.rel_tol = rel;
    const double discrepancy = relative(pc_cavity(FieldKind::ESquared, 1.0, 0.3, cfg).value, exact);
    // below ~1e-15 everything is rounding noise
    CHECK(discrepancy <= std::max(previous, 4e-16));
    previous = discrepancy;
  }
}

TEST_CASE("doubling the tail budget stays within the error estimate") {
  QuadratureConfig longer;
  longer.tail_exponent_budget = 120.0;
  for (FieldKind kind : {FieldKind::ESquared, FieldKind::BSquared, FieldKind::EnergyDensity}) {
    for (double z : {0.05, 1.0}) {
      const auto base = drude_single(kind, 3.0, z);
      const auto extended = drude_single(kind, 3.0, z, longer);
      CHECK(base.truncation_u == doctest::Approx(30.0 / z));
      CHECK(std::abs(base.value - extended.value) <= base.error_estimate);
    }
  }
}

TEST_CASE("results are reproducible and thread safe") {
  const auto reference = drude_single(FieldKind::ESquared, 2.0, 0.3);
  std::vector<double> values(4);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < values.size(); ++i) {
    pool.emplace_back([&values, i] { values[i] = drude_single(FieldKind::ESquared, 2.0, 0.3).value; });
  }
  for (auto& th : pool) th.join();
  for (double v : values) CHECK(v == reference.value);
  CHECK(drude_single(FieldKind::ESquared, 2.0, 0.3).value == reference.value);
}
