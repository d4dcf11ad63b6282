#pragma once

// Double integrals  \int_0^inf du \int_0^1 dt f(u, t)  for integrands that
// decay at least like u^3 e^{-u d} with a caller-supplied decay scale d.
//
// The u axis is truncated at u_max = tail_exponent_budget / d and integrated
// with globally adaptive Gauss-Kronrod (G10/K21) bisection. The t axis uses a
// fixed composite Gauss-Legendre rule on panels graded geometrically toward
// t = 0, where the transverse-magnetic coefficient develops a boundary layer
// of width ~ 1/u.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  double tail_exponent_budget = 60.0;
  int max_subdivisions = 2000;
  /// Gauss-Legendre points on each graded t panel.
  int inner_rule_order = 16;
  /// Number of halvings toward t = 0: panels [2^-(k+1), 2^-k] for
  /// k < levels, plus [0, 2^-levels].
  int inner_grading_levels = 40;
  /// Smallest accepted decay scale, in the caller's reference length.
  double decay_floor = 1e-6;

  /// Throws DomainError on any violated invariant.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  double truncation_u = 0.0;
};

/// Subdivision budget exhausted before the tolerance was met. Carries the best
/// available estimate.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& what, IntegralResult best) : Error(what), best_(best) {}
  const IntegralResult& best() const { return best_; }

private:
  IntegralResult best_;
};

using NodeIntegrand = std::function<double(double u, double t)>;

/// Fixed composite Gauss-Legendre rule on [0, 1] with geometric grading
/// toward 0.
class GradedLegendreRule {
public:
  GradedLegendreRule(int order, int levels);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  template <class G>
  double integrate(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * g(nodes_[i]);
    return sum;
  }

private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Global adaptive G10/K21 integration of a scalar function over [lo, hi].
/// `breakpoints` (strictly inside (lo, hi), ascending) seed the initial
/// partition. Reports the sum of panel error estimates.
IntegralResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                                  std::span<const double> breakpoints, double rel_tol,
                                  double abs_tol, int max_subdivisions);

/// Integrates f over u in [0, inf), t in [0, 1].
///
/// Throws InvalidDecayScale for decay_scale <= 0, DivergesAtBoundary for
/// 0 < decay_scale < cfg.decay_floor, NonConvergence when the subdivision
/// budget runs out.
IntegralResult integrate_semi_infinite(const NodeIntegrand& f, double decay_scale,
                                       const QuadratureConfig& cfg = {});

}  // namespace casimir
