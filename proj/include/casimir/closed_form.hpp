#pragma once

// Exact and leading-order reference results: perfectly conducting plates and
// half-space, the polygamma form of the cavity profiles, the retarded
// atom-wall potential, and the near-wall power laws of a Drude half-space.

#include "casimir/dielectric.hpp"

namespace casimir {

/// Constant energy density between perfectly conducting plates,
/// -pi^2 / (720 a^4). a <= 0 throws DomainError.
double pc_cavity_energy(double a);

/// <E^2> and <B^2> between perfectly conducting plates, trigonometric form.
/// z in {0, a} throws DivergesAtBoundary; z outside [0, a] throws DomainError.
double pc_cavity_e2(double z, double a);
double pc_cavity_b2(double z, double a);

/// The same profiles assembled from psi^(3)(z/a) + psi^(3)(1 - z/a).
double pc_cavity_e2_polygamma(double z, double a);
double pc_cavity_b2_polygamma(double z, double a);

/// psi^(3)(x) = 6 sum_{n>=0} (x + n)^-4 for x > 0. Non-positive x throws
/// DomainError.
double polygamma3(double x);

/// Right-hand side of the reflection formula,
/// psi^(3)(x) + psi^(3)(1 - x) = -pi d^3/dx^3 cot(pi x)
///                             = 2 pi^4 (1 + 2 cos^2 pi x) / sin^4 pi x.
double polygamma3_reflection(double x);

/// +-3 / (16 pi^2 z^4) outside a perfectly conducting half-space.
double pc_single_e2(double z);
double pc_single_b2(double z);

/// Large-distance Casimir-Polder potential -3 alpha0 / (32 pi^2 z^4).
double casimir_polder(double z, double alpha0);

enum class AsymptoteFormula {
  DrudeEnergyNearWall,
  DrudeESquaredNearWall,
  DrudeBSquaredNearWall,
  ConductorEnergy,
  ConductorESquared,
  ConductorBSquared,
};

const char* to_string(AsymptoteFormula formula);

/// quantity ~ leading_coefficient * z^power as z -> 0.
struct AsymptoteReport {
  double leading_coefficient;
  int power;
  AsymptoteFormula formula;

  double evaluate(double z) const;
};

struct NearWallAsymptotes {
  AsymptoteReport energy;
  AsymptoteReport e2;
  AsymptoteReport b2;
};

/// Leading near-wall behaviour of a single interface.
///
/// Drude: U ~ sqrt2 wp / (64 pi z^3), <E^2> ~ sqrt2 wp / (32 pi z^3),
/// <B^2> ~ -5 wp^2 / (96 pi^2 z^2). PerfectConductor: the exact z^-4 laws.
/// Other models throw NotApplicable.
NearWallAsymptotes near_wall_asymptotes(const DielectricModel& model);

}  // namespace casimir
