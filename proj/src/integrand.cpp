#include "casimir/integrand.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kInvFourPiSq = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
constexpr double kInvTwoPiSq = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

void require_vacuum_side(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(fmt::format("field point must lie in the vacuum region z > 0, got z={}", z));
  }
}

void require_inside_gap(double a, double z) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(fmt::format("cavity width must be positive and finite, got a={}", a));
  }
  if (!(z > 0.0 && z < a)) {
    throw DomainError(fmt::format("field point z={} outside the gap (0, {})", z, a));
  }
}

}  // namespace

Geometry Geometry::cavity(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError(fmt::format("cavity width must be positive and finite, got {}", width));
  }
  return Geometry{Cavity{width}};
}

double Geometry::width() const {
  if (const auto* c = std::get_if<Cavity>(&geometry_)) return c->width;
  throw DomainError("a single interface has no width");
}

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::ESquared: return "e2";
    case FieldKind::BSquared: return "b2";
    case FieldKind::EnergyDensity: return "u";
  }
  return "?";
}

double single_integrand(FieldKind kind, ReflectionPair pair, double z, PolarNode node) {
  const double t2 = node.t * node.t;
  const double r = pair.r;
  const double rp = pair.r_prime;
  double bracket = 0.0;
  switch (kind) {
    case FieldKind::ESquared: bracket = -t2 * r + (2.0 - t2) * rp; break;
    case FieldKind::BSquared: bracket = (2.0 - t2) * r - t2 * rp; break;
    case FieldKind::EnergyDensity: bracket = (1.0 - t2) * (r + rp); break;
  }
  const double u = node.u;
  return kInvFourPiSq * u * u * u * bracket * std::exp(-2.0 * u * z);
}

double single_integrand(FieldKind kind, const DielectricModel& model, double z, PolarNode node) {
  require_vacuum_side(z);
  return single_integrand(kind, reflection_pair(model, node), z, node);
}

CavityIntegrandTerms cavity_terms(FieldKind kind, ReflectionPair pair, double a, double z,
                                  PolarNode node) {
  const double u = node.u;
  const double t2 = node.t * node.t;
  const double decay = std::exp(-2.0 * u * a);
  const double one_minus_decay = -std::expm1(-2.0 * u * a);

  // 1 - x^2 e^{-2ua}, split so that |x| -> 1 keeps its precision.
  auto denominator = [&](double x) { return (1.0 - x) * (1.0 + x) + x * x * one_minus_decay; };
  const double d_r = denominator(pair.r);
  const double d_rp = denominator(pair.r_prime);

  // r^2/(r^2 - e^{2ua}) rewritten as -r^2 e^{-2ua}/(1 - r^2 e^{-2ua}).
  const double c_r = -pair.r * pair.r * decay / d_r;
  const double c_rp = -pair.r_prime * pair.r_prime * decay / d_rp;
  const double a_r = pair.r / d_r;
  const double a_rp = pair.r_prime / d_rp;

  // e^{-ua} cosh[u(2z - a)]
  const double profile = 0.5 * (std::exp(-2.0 * u * (a - z)) + std::exp(-2.0 * u * z));

  double position = 0.0;
  switch (kind) {
    case FieldKind::ESquared: position = -t2 * a_r + (2.0 - t2) * a_rp; break;
    case FieldKind::BSquared: position = (2.0 - t2) * a_r - t2 * a_rp; break;
    case FieldKind::EnergyDensity: position = (1.0 - t2) * (a_r + a_rp); break;
  }
  return {t2 * (c_r + c_rp), position * profile};
}

CavityIntegrandTerms cavity_terms(FieldKind kind, const DielectricModel& model, double a, double z,
                                  PolarNode node) {
  require_inside_gap(a, z);
  return cavity_terms(kind, reflection_pair(model, node), a, z, node);
}

double cavity_integrand(FieldKind kind, ReflectionPair pair, double a, double z, PolarNode node) {
  const double u = node.u;
  if (u == 0.0) return 0.0;
  return kInvTwoPiSq * u * u * u * cavity_terms(kind, pair, a, z, node).sum();
}

double cavity_integrand(FieldKind kind, const DielectricModel& model, double a, double z,
                        PolarNode node) {
  require_inside_gap(a, z);
  return cavity_integrand(kind, reflection_pair(model, node), a, z, node);
}

}  // namespace casimir
