#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "oracle.hpp"

using namespace casimir;

TEST_CASE("epsilon on the imaginary axis") {
  CHECK(epsilon_imag_axis(DielectricModel::drude(1.0), 1.0) == doctest::Approx(2.0));
  CHECK(epsilon_imag_axis(DielectricModel::drude(2.0), 1.0) == doctest::Approx(5.0));
  CHECK(epsilon_imag_axis(DielectricModel::vacuum(), 5.0) == 1.0);
  CHECK(epsilon_imag_axis(DielectricModel::constant(3.5), 0.0) == 3.5);
  CHECK(std::isinf(epsilon_imag_axis(DielectricModel::perfect_conductor(), 1.0)));

  CHECK_THROWS_AS(epsilon_imag_axis(DielectricModel::drude(1.0), 0.0), DomainError);
  CHECK_THROWS_AS(epsilon_imag_axis(DielectricModel::vacuum(), -1.0), DomainError);
}

TEST_CASE("factories reject invalid parameters") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DielectricModel::drude(0.0), DomainError);
  CHECK_THROWS_AS(DielectricModel::drude(-1.0), DomainError);
  CHECK_THROWS_AS(DielectricModel::drude(inf), DomainError);
  CHECK_THROWS_AS(DielectricModel::drude(nan), DomainError);
  CHECK_THROWS_AS(DielectricModel::constant(1.0), DomainError);
  CHECK_THROWS_AS(DielectricModel::constant(inf), DomainError);
  CHECK_NOTHROW(DielectricModel::constant(1.0001));

  CHECK(DielectricModel::drude(3.0).plasma_frequency() == 3.0);
  CHECK_THROWS_AS(DielectricModel::vacuum().plasma_frequency(), DomainError);
  CHECK(DielectricModel::drude(1.0).name() == "drude");
  CHECK(DielectricModel::perfect_conductor().name() == "pc");
}

TEST_CASE("polar nodes") {
  CHECK_THROWS_AS(PolarNode::checked(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(PolarNode::checked(1.0, 1.5), DomainError);
  CHECK_THROWS_AS(PolarNode::checked(1.0, -0.1), DomainError);
  const auto node = PolarNode::checked(2.0, 0.6);
  CHECK(node.zeta() == doctest::Approx(1.2));
  CHECK(node.k() == doctest::Approx(1.6));
  CHECK(PolarNode{3.0, 1.0}.k() == 0.0);
}

TEST_CASE("reflection pair examples") {
  const auto drude = DielectricModel::drude(1.0);

  const auto at_origin = reflection_pair(drude, {0.0, 0.3});
  CHECK(at_origin.r == -1.0);
  CHECK(at_origin.r_prime == 1.0);

  CHECK(reflection_pair(drude, {4.0, 0.0}).r_prime == doctest::Approx(1.0).epsilon(1e-15));

  const auto unit = reflection_pair(drude, {1.0, 1.0});
  const double s2 = std::sqrt(2.0);
  CHECK(unit.r == doctest::Approx((1.0 - s2) / (1.0 + s2)).epsilon(1e-14));
  CHECK(unit.r_prime == doctest::Approx((2.0 - s2) / (2.0 + s2)).epsilon(1e-14));
  CHECK(unit.r == doctest::Approx(-0.171573).epsilon(1e-6));
  CHECK(unit.r_prime == doctest::Approx(0.171573).epsilon(1e-6));

  for (double u : {0.0, 0.5, 1e3}) {
    for (double t : {0.0, 0.5, 1.0}) {
      const auto pc = reflection_pair(DielectricModel::perfect_conductor(), {u, t});
      CHECK(pc.r == -1.0);
      CHECK(pc.r_prime == 1.0);
      const auto vac = reflection_pair(DielectricModel::vacuum(), {u, t});
      CHECK(vac.r == 0.0);
      CHECK(vac.r_prime == 0.0);
    }
  }

  const auto swapped = unit.swapped();
  CHECK(swapped.r == unit.r_prime);
  CHECK(swapped.r_prime == unit.r);
}

TEST_CASE("Drude r does not depend on t") {
  const auto model = DielectricModel::drude(2.5);
  for (double u : {1e-3, 0.7, 3.0, 40.0, 1e5}) {
    const double reference = reflection_pair(model, {u, 0.0}).r;
    for (double t = 0.05; t <= 1.0; t += 0.05) CHECK(reflection_pair(model, {u, t}).r == reference);
  }
}

TEST_CASE("Drude r falls off as -wp^2 / 4u^2") {
  for (double wp : {0.3, 1.0, 70.0}) {
    const double u = 100.0 * wp;
    const double r = reflection_pair(DielectricModel::drude(wp), {u, 0.4}).r;
    CHECK(std::abs(r * 4.0 * u * u / (wp * wp) + 1.0) < 0.01);
  }
}

TEST_CASE("Drude coefficients are monotone in u") {
  const auto model = DielectricModel::drude(1.3);
  for (double t : {0.1, 0.5, 1.0}) {
    double prev_r = -1.0;
    double prev_rp = 1.0;
    for (double u = 0.01; u < 500.0; u *= 1.3) {
      const auto pair = reflection_pair(model, {u, t});
      CHECK(pair.r >= prev_r);
      CHECK(pair.r_prime <= prev_rp);
      prev_r = pair.r;
      prev_rp = pair.r_prime;
    }
  }
}

TEST_CASE("Drude sign bounds on randomized grids") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_wp(std::log(0.1), std::log(100.0));
  for (int trial = 0; trial < 5; ++trial) {
    const double wp = std::exp(log_wp(rng));
    const auto model = DielectricModel::drude(wp);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
      const double u = wp * std::pow(10.0, -4.0 + 8.0 * i / 99.0);
      for (int j = 0; j < 100; ++j) {
        const double t = j / 99.0;
        const auto p = reflection_pair(model, {u, t});
        if (!(p.r >= -1.0 && p.r <= 0.0 && p.r_prime >= 0.0 && p.r_prime <= 1.0)) ++violations;
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("constant permittivity agrees with the direct formulas") {
  for (double eps : {1.5, 4.0, 80.0}) {
    const auto model = DielectricModel::constant(eps);
    const oracle::Material m{oracle::Material::Constant, eps};
    for (double u : {0.0, 0.2, 3.0, 1e4}) {
      for (double t : {0.0, 0.25, 0.8, 1.0}) {
        const auto got = reflection_pair(model, {u, t});
        const auto want = oracle::coefficients(m, u, t);
        CHECK(got.r == doctest::Approx(want.r).epsilon(1e-12));
        CHECK(got.r_prime == doctest::Approx(want.rp).epsilon(1e-12));
        // frequency independent: only the angle enters
        const auto at_one = reflection_pair(model, {1.0, t});
        CHECK(got.r == doctest::Approx(at_one.r).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("Drude agrees with the direct formulas where those are accurate") {
  const oracle::Material m{oracle::Material::Drude, 1.7};
  const auto model = DielectricModel::drude(1.7);
  for (double u : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
    for (double t : {0.0, 0.3, 1.0}) {
      const auto got = reflection_pair(model, {u, t});
      const auto want = oracle::coefficients(m, u, t);
      CHECK(got.r == doctest::Approx(want.r).epsilon(1e-10));
      CHECK(got.r_prime == doctest::Approx(want.rp).epsilon(1e-10));
    }
  }
}
