#pragma once

// Material laws on the imaginary-frequency axis and the two polarization
// reflection coefficients of a vacuum/dielectric interface, expressed in the
// polar variables (u, t): zeta = u t, k = u sqrt(1 - t^2).
//
// Natural units hbar = c = 1 throughout; lengths and inverse lengths share
// whatever unit the caller picks.

#include <string>
#include <variant>

namespace casimir {

struct Drude {
  double plasma_frequency;
};

struct ConstantEpsilon {
  double epsilon;
};

struct PerfectConductor {};

struct Vacuum {};

/// A validated material model. Construct through the named factories; each
/// one enforces the invariants of its variant.
class DielectricModel {
public:
  using Variant = std::variant<Drude, ConstantEpsilon, PerfectConductor, Vacuum>;

  static DielectricModel drude(double plasma_frequency);
  static DielectricModel constant(double epsilon);
  static DielectricModel perfect_conductor() { return DielectricModel{PerfectConductor{}}; }
  static DielectricModel vacuum() { return DielectricModel{Vacuum{}}; }

  const Variant& variant() const { return model_; }

  bool is_drude() const { return std::holds_alternative<Drude>(model_); }
  bool is_constant() const { return std::holds_alternative<ConstantEpsilon>(model_); }
  bool is_perfect_conductor() const { return std::holds_alternative<PerfectConductor>(model_); }
  bool is_vacuum() const { return std::holds_alternative<Vacuum>(model_); }

  /// Plasma frequency of a Drude model; throws DomainError for other variants.
  double plasma_frequency() const;

  /// Short human-readable tag ("drude", "eps", "pc", "vacuum").
  std::string name() const;

private:
  explicit DielectricModel(Variant v) : model_(v) {}
  Variant model_;
};

/// Point in the (u, t) integration plane, t = cos(theta).
struct PolarNode {
  double u;
  double t;

  /// Validating constructor: u >= 0 and 0 <= t <= 1, otherwise DomainError.
  static PolarNode checked(double u, double t);

  double zeta() const;
  double k() const;
};

struct ReflectionPair {
  double r;        // transverse electric
  double r_prime;  // transverse magnetic

  ReflectionPair swapped() const { return {r_prime, r}; }
};

/// eps(i zeta). Drude gives 1 + wp^2/zeta^2, PerfectConductor returns +inf.
/// Drude at zeta = 0 and negative zeta throw DomainError.
double epsilon_imag_axis(const DielectricModel& model, double zeta);

/// (r, r') at a polar node. Drude at u = 0 is pinned to its analytic limit
/// (-1, 1); PerfectConductor is exactly (-1, 1), Vacuum exactly (0, 0).
ReflectionPair reflection_pair(const DielectricModel& model, PolarNode node);

}  // namespace casimir
