#pragma once

// Renormalized (u, t) integrands for <E^2>, <B^2> and the energy density U,
// for a single interface at z = 0 (vacuum at z > 0) and for a vacuum gap
// 0 < z < a between two identical half-spaces. The divergent free-space
// contribution is never represented; every integrand here vanishes when the
// reflection coefficients do.

#include <variant>

#include "casimir/dielectric.hpp"

namespace casimir {

struct SingleInterface {};

struct Cavity {
  double width;
};

class Geometry {
public:
  using Variant = std::variant<SingleInterface, Cavity>;

  static Geometry single_interface() { return Geometry{SingleInterface{}}; }
  /// Throws DomainError unless 0 < width < inf.
  static Geometry cavity(double width);

  const Variant& variant() const { return geometry_; }
  bool is_cavity() const { return std::holds_alternative<Cavity>(geometry_); }
  /// Gap width; DomainError for a single interface.
  double width() const;

private:
  explicit Geometry(Variant g) : geometry_(g) {}
  Variant geometry_;
};

enum class FieldKind { ESquared, BSquared, EnergyDensity };

const char* to_string(FieldKind kind);

/// The two brackets of the cavity integrand. term_constant does not depend
/// on z; term_position carries the e^{-ua} cosh[u(2z - a)] profile.
struct CavityIntegrandTerms {
  double term_constant;
  double term_position;

  double sum() const { return term_constant + term_position; }
};

/// (1/4 pi^2) u^3 B(t) e^{-2uz} for the single interface. z <= 0 throws.
double single_integrand(FieldKind kind, const DielectricModel& model, double z, PolarNode node);

/// Same integrand from precomputed reflection coefficients; no validation.
double single_integrand(FieldKind kind, ReflectionPair pair, double z, PolarNode node);

/// Cavity brackets. Requires 0 < z < a (DomainError otherwise). No e^{+2ua}
/// is ever formed, so arbitrarily large u a is safe. At u = 0 the brackets of
/// a perfect conductor are infinite; the integrand itself is finite there.
CavityIntegrandTerms cavity_terms(FieldKind kind, const DielectricModel& model, double a, double z,
                                  PolarNode node);
CavityIntegrandTerms cavity_terms(FieldKind kind, ReflectionPair pair, double a, double z,
                                  PolarNode node);

/// (1/2 pi^2) u^3 (term_constant + term_position); zero at u = 0.
double cavity_integrand(FieldKind kind, const DielectricModel& model, double a, double z,
                        PolarNode node);
double cavity_integrand(FieldKind kind, ReflectionPair pair, double a, double z, PolarNode node);

}  // namespace casimir
