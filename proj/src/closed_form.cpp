#include "casimir/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

void require_positive_length(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} must be positive and finite, got {}", what, value));
  }
}

// Dimensionless gap coordinate z/a after validating 0 < z < a.
double gap_fraction(double z, double a) {
  require_positive_length(a, "cavity width");
  if (z == 0.0 || z == a) {
    throw DivergesAtBoundary(fmt::format("field profile diverges at the plate z={}", z));
  }
  if (!(z > 0.0 && z < a)) {
    throw DomainError(fmt::format("z={} outside the gap (0, {})", z, a));
  }
  return z / a;
}

double require_wall_distance(double z) {
  if (z == 0.0) throw DivergesAtBoundary("field diverges at the interface z = 0");
  require_positive_length(z, "distance from the interface");
  return z;
}

// (1 + 2 cos^2 pi x) / sin^4 pi x
double cavity_shape(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  return (1.0 + 2.0 * c * c) / (s * s * s * s);
}

}  // namespace

double pc_cavity_energy(double a) {
  require_positive_length(a, "cavity width");
  const double a2 = a * a;
  return -kPi2 / (720.0 * a2 * a2);
}

double pc_cavity_e2(double z, double a) {
  const double x = gap_fraction(z, a);
  const double a2 = a * a;
  return pc_cavity_energy(a) + kPi2 / (16.0 * a2 * a2) * cavity_shape(x);
}

double pc_cavity_b2(double z, double a) {
  const double x = gap_fraction(z, a);
  const double a2 = a * a;
  return pc_cavity_energy(a) - kPi2 / (16.0 * a2 * a2) * cavity_shape(x);
}

double pc_cavity_e2_polygamma(double z, double a) {
  const double x = gap_fraction(z, a);
  const double a2 = a * a;
  return pc_cavity_energy(a) +
         (polygamma3(x) + polygamma3(1.0 - x)) / (32.0 * kPi2 * a2 * a2);
}

double pc_cavity_b2_polygamma(double z, double a) {
  const double x = gap_fraction(z, a);
  const double a2 = a * a;
  return pc_cavity_energy(a) -
         (polygamma3(x) + polygamma3(1.0 - x)) / (32.0 * kPi2 * a2 * a2);
}

double polygamma3(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(fmt::format("polygamma3 is evaluated for x > 0 only, got {}", x));
  }
  constexpr double kShift = 20.0;
  double head = 0.0;
  double y = x;
  while (y < kShift) {
    const double y2 = y * y;
    head += 6.0 / (y2 * y2);
    y += 1.0;
  }
  // Euler-Maclaurin tail of 6 sum_{n>=0} (y + n)^-4:
  // 2/y^3 + 3/y^4 + sum_k B_2k (2k+1)(2k+2) / y^(2k+3).
  static constexpr std::array<double, 6> kCorrections = {
      2.0, -1.0, 4.0 / 3.0, -3.0, 10.0, -691.0 / 15.0};
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv2 * inv2 * inv;  // y^-5
  for (double c : kCorrections) {
    series += c * power;
    power *= inv2;
  }
  const double tail = 2.0 * inv2 * inv + 3.0 * inv2 * inv2 + series;
  return head + tail;
}

double polygamma3_reflection(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(fmt::format("reflection formula evaluated for 0 < x < 1 only, got {}", x));
  }
  return 2.0 * kPi2 * kPi2 * cavity_shape(x);
}

double pc_single_e2(double z) {
  require_wall_distance(z);
  const double z2 = z * z;
  return 3.0 / (16.0 * kPi2 * z2 * z2);
}

double pc_single_b2(double z) { return -pc_single_e2(z); }

double casimir_polder(double z, double alpha0) {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) {
    throw DomainError(fmt::format("static polarizability must be >= 0, got {}", alpha0));
  }
  return -0.5 * alpha0 * pc_single_e2(z);
}

const char* to_string(AsymptoteFormula formula) {
  switch (formula) {
    case AsymptoteFormula::DrudeEnergyNearWall: return "drude_u_near_wall";
    case AsymptoteFormula::DrudeESquaredNearWall: return "drude_e2_near_wall";
    case AsymptoteFormula::DrudeBSquaredNearWall: return "drude_b2_near_wall";
    case AsymptoteFormula::ConductorEnergy: return "pc_u";
    case AsymptoteFormula::ConductorESquared: return "pc_e2";
    case AsymptoteFormula::ConductorBSquared: return "pc_b2";
  }
  return "?";
}

double AsymptoteReport::evaluate(double z) const {
  return leading_coefficient * std::pow(z, power);
}

NearWallAsymptotes near_wall_asymptotes(const DielectricModel& model) {
  if (model.is_drude()) {
    const double wp = model.plasma_frequency();
    const double u = std::numbers::sqrt2 * wp / (64.0 * kPi);
    return {
        {u, -3, AsymptoteFormula::DrudeEnergyNearWall},
        {2.0 * u, -3, AsymptoteFormula::DrudeESquaredNearWall},
        {-5.0 * wp * wp / (96.0 * kPi2), -2, AsymptoteFormula::DrudeBSquaredNearWall},
    };
  }
  if (model.is_perfect_conductor()) {
    const double c = 3.0 / (16.0 * kPi2);
    return {
        {0.0, -4, AsymptoteFormula::ConductorEnergy},
        {c, -4, AsymptoteFormula::ConductorESquared},
        {-c, -4, AsymptoteFormula::ConductorBSquared},
    };
  }
  throw NotApplicable(
      fmt::format("no leading-order near-wall coefficients for model '{}'", model.name()));
}

}  // namespace casimir
