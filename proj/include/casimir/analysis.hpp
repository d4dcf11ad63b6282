#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/integrand.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// hbar c in eV nm (CODATA 2018).
inline constexpr double kHbarCEvNm = 197.3269804;

struct FieldPoint {
  double z;
  double e2;
  double b2;
  double u;
  /// Largest of the three quadrature error estimates.
  double err;
};

struct Profile {
  Geometry geometry;
  DielectricModel model;
  std::vector<FieldPoint> points;
};

struct ScanPoint {
  double lambda;        // wp * a
  double u_mid_scaled;  // U(a/2) * a^4
  double err;
};

/// Standard uses (r, r'); Swapped feeds (r', r) to every integrand, which
/// maps the <E^2> integrand onto the <B^2> one.
enum class PolarizationOrder { Standard, Swapped };

enum class Spacing { Linear, Logarithmic };

/// Window [lo, hi] of distances from a single interface.
struct ZWindow {
  double lo;
  double hi;
};

/// Worker cap for profiles and scans: CASIMIR_THREADS if set to a positive
/// integer, otherwise the hardware concurrency (at least 1).
std::size_t default_worker_count();

/// One quantity at one field point. Errors: DomainError for z outside the
/// vacuum region, DivergesAtBoundary on an interface or below the decay
/// floor, NonConvergence from the engine.
IntegralResult integrate_field(FieldKind kind, const Geometry& geometry,
                               const DielectricModel& model, double z,
                               const QuadratureConfig& cfg = {},
                               PolarizationOrder order = PolarizationOrder::Standard);

/// <E^2>, <B^2> and U at z, each from its own quadrature.
FieldPoint compute_point(const Geometry& geometry, const DielectricModel& model, double z,
                         const QuadratureConfig& cfg = {},
                         PolarizationOrder order = PolarizationOrder::Standard);

/// Cavity profile on n evenly spaced points in [margin a, (1 - margin) a].
Profile profile(const Geometry& cavity, const DielectricModel& model, int n_points, double margin,
                const QuadratureConfig& cfg = {}, std::size_t workers = default_worker_count());

/// Single-interface profile on n evenly spaced points in [window.lo, window.hi].
Profile profile(const Geometry& single, const DielectricModel& model, int n_points,
                ZWindow window, const QuadratureConfig& cfg = {},
                std::size_t workers = default_worker_count());

/// U(a/2) a^4 for a Drude gap with wp a = lambda (evaluated at a = 1).
ScanPoint midpoint_energy_scaled(double lambda, const QuadratureConfig& cfg = {});

std::vector<ScanPoint> midpoint_scan(double lambda_min, double lambda_max, int n,
                                     const QuadratureConfig& cfg = {},
                                     Spacing spacing = Spacing::Logarithmic,
                                     std::size_t workers = default_worker_count());

struct Bracket {
  double lo;
  double hi;
};

/// Bisection for a sign change of f on [lo, hi]; stops when the half-width
/// of the bracket is <= tol and returns its midpoint. NoSignChange when
/// f(lo) and f(hi) share a sign.
double bisect(const std::function<double(double)>& f, Bracket bracket, double tol);

/// wp a at which the midgap energy density changes sign.
double critical_lambda(const QuadratureConfig& cfg = {}, Bracket bracket = {50.0, 200.0},
                       double tol = 0.5);

/// a_c = lambda_c hbar c / wp in micrometres, wp given in eV.
double critical_separation_physical(double lambda_c, double omega_p_ev);

/// U_cavity(z_small) / U_single(z_small). NotApplicable when the
/// single-interface energy density vanishes identically.
double wall_reduction_check(double a, const DielectricModel& model, double z_small,
                            const QuadratureConfig& cfg = {});

}  // namespace casimir
