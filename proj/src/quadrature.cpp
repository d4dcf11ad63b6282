#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <fmt/format.h>

namespace casimir {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr int kSeedHalvings = 12;

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool refinable = true;
};

// One G10/K21 panel with the QUADPACK error heuristic.
Panel evaluate_panel(const std::function<double(double)>& g, double lo, double hi) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 21> fx{};
  fx[0] = g(center);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fx[2 * i - 1] = g(center - half * xk[i]);
    fx[2 * i] = g(center + half * xk[i]);
  }

  double kronrod = wk[0] * fx[0];
  double gauss = 0.0;
  double abs_sum = wk[0] * std::abs(fx[0]);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = fx[2 * i - 1] + fx[2 * i];
    kronrod += wk[i] * pair;
    abs_sum += wk[i] * (std::abs(fx[2 * i - 1]) + std::abs(fx[2 * i]));
    // Odd Kronrod abscissae are the 10-point Gauss nodes.
    if (i % 2 == 1) gauss += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = wk[0] * std::abs(fx[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    asc += wk[i] * (std::abs(fx[2 * i - 1] - mean) + std::abs(fx[2 * i] - mean));
  }

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && error != 0.0) {
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEpsilon)) {
    error = std::max(50.0 * kEpsilon * res_abs, error);
  }
  return {lo, hi, value, error};
}

// \int_X^inf u^3 e^{-u d} du
double cubic_exponential_tail(double x, double d) {
  const double xd = x * d;
  return std::exp(-xd) * (x * x * x / d + 3.0 * x * x / (d * d) + 6.0 * x / (d * d * d) +
                          6.0 / (d * d * d * d));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError(fmt::format("rel_tol must be positive, got {}", rel_tol));
  if (!(abs_tol >= 0.0)) throw DomainError(fmt::format("abs_tol must be >= 0, got {}", abs_tol));
  if (!(tail_exponent_budget >= 30.0) || !std::isfinite(tail_exponent_budget)) {
    throw DomainError(
        fmt::format("tail_exponent_budget must be >= 30, got {}", tail_exponent_budget));
  }
  if (max_subdivisions < 10) {
    throw DomainError(fmt::format("max_subdivisions must be >= 10, got {}", max_subdivisions));
  }
  if (inner_rule_order < 2 || inner_rule_order > 200) {
    throw DomainError(fmt::format("inner_rule_order must lie in [2, 200], got {}", inner_rule_order));
  }
  if (inner_grading_levels < 0 || inner_grading_levels > 200) {
    throw DomainError(
        fmt::format("inner_grading_levels must lie in [0, 200], got {}", inner_grading_levels));
  }
  if (!(decay_floor >= 0.0)) {
    throw DomainError(fmt::format("decay_floor must be >= 0, got {}", decay_floor));
  }
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  // Non-negative zeros, ascending; the rule is symmetric.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(order);
  nodes.clear();
  weights.clear();
  auto weight = [order](double x) {
    const double dp = boost::math::legendre_p_prime(order, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    nodes.push_back(-*it);
    weights.push_back(weight(*it));
  }
  for (double x : zeros) {
    nodes.push_back(x);
    weights.push_back(weight(x));
  }
}

GradedLegendreRule::GradedLegendreRule(int order, int levels) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(order, x, w);

  auto add_panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes_.push_back(c + h * x[i]);
      weights_.push_back(h * w[i]);
    }
  };
  add_panel(0.0, std::ldexp(1.0, -levels));
  for (int k = levels - 1; k >= 0; --k) add_panel(std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k));
}

namespace {

// Stops once the panel error plus `reserved_error` meets the target.
IntegralResult adaptive_core(const std::function<double(double)>& g, double lo, double hi,
                             std::span<const double> breakpoints, double rel_tol, double abs_tol,
                             int max_subdivisions, double reserved_error) {
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(max_subdivisions) + breakpoints.size() + 1);
  std::size_t u_evaluations = 0;
  auto counted = [&](double u) {
    ++u_evaluations;
    return g(u);
  };
  const std::function<double(double)> h = counted;

  double left = lo;
  for (double b : breakpoints) {
    if (b <= left || b >= hi) continue;
    panels.push_back(evaluate_panel(h, left, b));
    left = b;
  }
  panels.push_back(evaluate_panel(h, left, hi));

  IntegralResult result;
  for (;;) {
    double total = 0.0;
    double error = reserved_error;
    for (const Panel& p : panels) {
      total += p.value;
      error += p.error;
    }
    result.value = total;
    result.error_estimate = error;
    result.evaluations = u_evaluations;
    if (error <= std::max(rel_tol * std::abs(total), abs_tol)) return result;

    auto worst = panels.end();
    for (auto it = panels.begin(); it != panels.end(); ++it) {
      if (it->refinable && (worst == panels.end() || it->error > worst->error)) worst = it;
    }
    if (worst == panels.end() || static_cast<int>(panels.size()) >= max_subdivisions) {
      throw NonConvergence(
          fmt::format("adaptive quadrature stopped after {} panels with error {:.3e} above target "
                      "(value {:.6e})",
                      panels.size(), error, total),
          result);
    }
    const double mid = 0.5 * (worst->lo + worst->hi);
    if (!(mid > worst->lo && mid < worst->hi)) {
      worst->refinable = false;
      continue;
    }
    const Panel right = evaluate_panel(h, mid, worst->hi);
    *worst = evaluate_panel(h, worst->lo, mid);
    panels.push_back(right);
  }
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                                  std::span<const double> breakpoints, double rel_tol,
                                  double abs_tol, int max_subdivisions) {
  return adaptive_core(g, lo, hi, breakpoints, rel_tol, abs_tol, max_subdivisions, 0.0);
}

IntegralResult integrate_semi_infinite(const NodeIntegrand& f, double decay_scale,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(decay_scale > 0.0) || !std::isfinite(decay_scale)) {
    throw InvalidDecayScale(fmt::format("decay scale must be positive, got {}", decay_scale));
  }
  if (decay_scale < cfg.decay_floor) {
    throw DivergesAtBoundary(fmt::format(
        "decay scale {} below floor {}: field point too close to an interface", decay_scale,
        cfg.decay_floor));
  }

  const GradedLegendreRule rule(cfg.inner_rule_order, cfg.inner_grading_levels);
  const std::size_t inner_nodes = rule.nodes().size();
  auto inner = [&](double u) { return rule.integrate([&](double t) { return f(u, t); }); };

  const double u_max = cfg.tail_exponent_budget / decay_scale;
  std::array<double, kSeedHalvings> seeds{};
  for (int j = 0; j < kSeedHalvings; ++j) seeds[j] = std::ldexp(u_max, j - kSeedHalvings);

  // Tail: bound |inner(u)| <= C u^3 e^{-u d} with C sampled on the top half of
  // the truncated range. The bound is charged against the tolerance up front.
  constexpr int kTailProbes = 5;
  double scale = 0.0;
  for (int i = 0; i < kTailProbes; ++i) {
    const double u = u_max * (0.5 + 0.5 * (i + 1) / kTailProbes);
    const double ratio = std::abs(inner(u)) * std::exp(u * decay_scale) / (u * u * u);
    if (std::isfinite(ratio)) scale = std::max(scale, ratio);
  }
  const double tail = scale * cubic_exponential_tail(u_max, decay_scale);
  const std::size_t probe_evaluations = kTailProbes * inner_nodes;

  try {
    IntegralResult result = adaptive_core(inner, 0.0, u_max, seeds, cfg.rel_tol, cfg.abs_tol,
                                          cfg.max_subdivisions, tail);
    result.evaluations = result.evaluations * inner_nodes + probe_evaluations;
    result.truncation_u = u_max;
    return result;
  } catch (const NonConvergence& e) {
    IntegralResult best = e.best();
    best.evaluations = best.evaluations * inner_nodes + probe_evaluations;
    best.truncation_u = u_max;
    throw NonConvergence(e.what(), best);
  }
}

}  // namespace casimir
