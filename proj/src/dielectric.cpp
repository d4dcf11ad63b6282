#include "casimir/dielectric.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DielectricModel DielectricModel::drude(double plasma_frequency) {
  if (!(plasma_frequency > 0.0) || !std::isfinite(plasma_frequency)) {
    throw DomainError(fmt::format("Drude plasma frequency must be positive and finite, got {}",
                                  plasma_frequency));
  }
  return DielectricModel{Drude{plasma_frequency}};
}

DielectricModel DielectricModel::constant(double epsilon) {
  if (!(epsilon > 1.0) || !std::isfinite(epsilon)) {
    throw DomainError(fmt::format("constant permittivity must exceed 1 and be finite, got {}",
                                  epsilon));
  }
  return DielectricModel{ConstantEpsilon{epsilon}};
}

double DielectricModel::plasma_frequency() const {
  if (const auto* d = std::get_if<Drude>(&model_)) return d->plasma_frequency;
  throw DomainError("plasma frequency requested from a non-Drude model");
}

std::string DielectricModel::name() const {
  return std::visit(overloaded{
                        [](const Drude&) { return std::string("drude"); },
                        [](const ConstantEpsilon&) { return std::string("eps"); },
                        [](const PerfectConductor&) { return std::string("pc"); },
                        [](const Vacuum&) { return std::string("vacuum"); },
                    },
                    model_);
}

PolarNode PolarNode::checked(double u, double t) {
  if (!(u >= 0.0) || !std::isfinite(u) || !(t >= 0.0 && t <= 1.0)) {
    throw DomainError(fmt::format("invalid polar node (u={}, t={})", u, t));
  }
  return {u, t};
}

double PolarNode::zeta() const { return u * t; }

double PolarNode::k() const { return u * std::sqrt((1.0 - t) * (1.0 + t)); }

double epsilon_imag_axis(const DielectricModel& model, double zeta) {
  if (!(zeta >= 0.0)) {
    throw DomainError(fmt::format("imaginary frequency must be non-negative, got {}", zeta));
  }
  return std::visit(
      overloaded{
          [zeta](const Drude& d) {
            if (zeta == 0.0) throw DomainError("Drude permittivity has a pole at zeta = 0");
            const double ratio = d.plasma_frequency / zeta;
            return 1.0 + ratio * ratio;
          },
          [](const ConstantEpsilon& c) { return c.epsilon; },
          [](const PerfectConductor&) { return std::numeric_limits<double>::infinity(); },
          [](const Vacuum&) { return 1.0; },
      },
      model.variant());
}

ReflectionPair reflection_pair(const DielectricModel& model, PolarNode node) {
  const double u = node.u;
  const double t2 = node.t * node.t;
  return std::visit(
      overloaded{
          [&](const Drude& d) -> ReflectionPair {
            if (u == 0.0) return {-1.0, 1.0};
            const double wp = d.plasma_frequency;
            const double wp2 = wp * wp;
            const double s = std::hypot(u, wp);
            // (u - s)/(u + s) = -wp^2/(u + s)^2 avoids the cancellation at large u.
            const double q = wp / (u + s);
            const double r = -q * q;
            const double ut2 = u * t2;
            const double rp = wp2 * (1.0 - ut2 / (u + s)) / (ut2 * u + wp2 + ut2 * s);
            return {r, rp};
          },
          [&](const ConstantEpsilon& c) -> ReflectionPair {
            // kappa_1 = u sqrt(1 + (eps - 1) t^2); the common factor u cancels.
            const double eps = c.epsilon;
            const double root = std::sqrt(1.0 + (eps - 1.0) * t2);
            const double r = -(eps - 1.0) * t2 / ((1.0 + root) * (1.0 + root));
            const double rp = (eps - root) / (eps + root);
            return {r, rp};
          },
          [](const PerfectConductor&) -> ReflectionPair { return {-1.0, 1.0}; },
          [](const Vacuum&) -> ReflectionPair { return {0.0, 0.0}; },
      },
      model.variant());
}

}  // namespace casimir
