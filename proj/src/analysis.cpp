#include "casimir/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>

#include <fmt/format.h>

namespace casimir {

namespace {

// Runs task(i) for i in [0, n) on up to `workers` threads. Each index is
// written by exactly one task, so results come back in input order; the
// exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  std::vector<std::exception_ptr> failures(n);
  auto run = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        task(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

std::vector<double> evenly_spaced(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

FieldPoint assemble(double z, const IntegralResult& e2, const IntegralResult& b2,
                    const IntegralResult& u) {
  return {z, e2.value, b2.value, u.value,
          std::max({e2.error_estimate, b2.error_estimate, u.error_estimate})};
}

}  // namespace

std::size_t default_worker_count() {
  if (const char* env = std::getenv("CASIMIR_THREADS")) {
    const std::string_view text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

IntegralResult integrate_field(FieldKind kind, const Geometry& geometry,
                               const DielectricModel& model, double z,
                               const QuadratureConfig& cfg, PolarizationOrder order) {
  const bool swap = order == PolarizationOrder::Swapped;
  auto pair_at = [&model, swap](PolarNode node) {
    const ReflectionPair pair = reflection_pair(model, node);
    return swap ? pair.swapped() : pair;
  };

  QuadratureConfig local = cfg;
  if (geometry.is_cavity()) {
    const double a = geometry.width();
    if (z == 0.0 || z == a) {
      throw DivergesAtBoundary(fmt::format("field point z={} lies on a plate", z));
    }
    if (!(z > 0.0 && z < a)) throw DomainError(fmt::format("z={} outside the gap (0, {})", z, a));
    local.decay_floor = cfg.decay_floor * a;
    const double decay = 2.0 * std::min(z, a - z);
    return integrate_semi_infinite(
        [&](double u, double t) {
          const PolarNode node{u, t};
          return cavity_integrand(kind, pair_at(node), a, z, node);
        },
        decay, local);
  }

  if (z == 0.0) throw DivergesAtBoundary("field point lies on the interface z = 0");
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(fmt::format("field point must satisfy z > 0, got {}", z));
  }
  if (model.is_drude()) local.decay_floor = cfg.decay_floor / model.plasma_frequency();
  return integrate_semi_infinite(
      [&](double u, double t) {
        const PolarNode node{u, t};
        return single_integrand(kind, pair_at(node), z, node);
      },
      2.0 * z, local);
}

FieldPoint compute_point(const Geometry& geometry, const DielectricModel& model, double z,
                         const QuadratureConfig& cfg, PolarizationOrder order) {
  const auto e2 = integrate_field(FieldKind::ESquared, geometry, model, z, cfg, order);
  const auto b2 = integrate_field(FieldKind::BSquared, geometry, model, z, cfg, order);
  const auto u = integrate_field(FieldKind::EnergyDensity, geometry, model, z, cfg, order);
  return assemble(z, e2, b2, u);
}

namespace {

Profile profile_at(const Geometry& geometry, const DielectricModel& model,
                   const std::vector<double>& zs, const QuadratureConfig& cfg,
                   std::size_t workers) {
  cfg.validate();
  Profile out{geometry, model, std::vector<FieldPoint>(zs.size())};
  parallel_for(zs.size(), workers,
               [&](std::size_t i) { out.points[i] = compute_point(geometry, model, zs[i], cfg); });
  return out;
}

void require_point_count(int n_points) {
  if (n_points < 1) throw DomainError(fmt::format("need at least one point, got {}", n_points));
}

}  // namespace

Profile profile(const Geometry& cavity, const DielectricModel& model, int n_points, double margin,
                const QuadratureConfig& cfg, std::size_t workers) {
  require_point_count(n_points);
  if (!cavity.is_cavity()) throw DomainError("margin-based profiles need a cavity geometry");
  if (!(margin > 0.0 && margin < 0.5)) {
    throw DomainError(fmt::format("margin must lie in (0, 0.5), got {}", margin));
  }
  const double a = cavity.width();
  return profile_at(cavity, model, evenly_spaced(margin * a, (1.0 - margin) * a, n_points), cfg,
                    workers);
}

Profile profile(const Geometry& single, const DielectricModel& model, int n_points,
                ZWindow window, const QuadratureConfig& cfg, std::size_t workers) {
  require_point_count(n_points);
  if (single.is_cavity()) throw DomainError("window-based profiles need a single interface");
  if (!(window.lo > 0.0) || !(window.hi >= window.lo) || !std::isfinite(window.hi) ||
      (n_points > 1 && window.hi == window.lo)) {
    throw DomainError(
        fmt::format("invalid z window [{}, {}] for {} points", window.lo, window.hi, n_points));
  }
  return profile_at(single, model, evenly_spaced(window.lo, window.hi, n_points), cfg, workers);
}

ScanPoint midpoint_energy_scaled(double lambda, const QuadratureConfig& cfg) {
  const auto model = DielectricModel::drude(lambda);
  const auto gap = Geometry::cavity(1.0);
  const auto u = integrate_field(FieldKind::EnergyDensity, gap, model, 0.5, cfg);
  return {lambda, u.value, u.error_estimate};
}

std::vector<ScanPoint> midpoint_scan(double lambda_min, double lambda_max, int n,
                                     const QuadratureConfig& cfg, Spacing spacing,
                                     std::size_t workers) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min) || !std::isfinite(lambda_max)) {
    throw DomainError(fmt::format("empty or invalid scan range [{}, {}]", lambda_min, lambda_max));
  }
  if (n < 1) throw DomainError(fmt::format("scan needs at least one point, got {}", n));
  cfg.validate();

  std::vector<double> lambdas;
  if (spacing == Spacing::Linear) {
    lambdas = evenly_spaced(lambda_min, lambda_max, n);
  } else {
    lambdas = evenly_spaced(std::log(lambda_min), std::log(lambda_max), n);
    for (double& l : lambdas) l = std::exp(l);
    lambdas.front() = lambda_min;
    if (n > 1) lambdas.back() = lambda_max;
  }

  std::vector<ScanPoint> out(lambdas.size());
  parallel_for(lambdas.size(), workers,
               [&](std::size_t i) { out[i] = midpoint_energy_scaled(lambdas[i], cfg); });
  return out;
}

double bisect(const std::function<double(double)>& f, Bracket bracket, double tol) {
  if (!(bracket.hi > bracket.lo)) {
    throw DomainError(fmt::format("bracket [{}, {}] is empty", bracket.lo, bracket.hi));
  }
  if (!(tol > 0.0)) throw DomainError(fmt::format("tolerance must be positive, got {}", tol));
  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NoSignChange(fmt::format("no sign change on [{}, {}]: f = {:.6e}, {:.6e}", lo, hi, f_lo,
                                   f_hi));
  }
  while (0.5 * (hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double critical_lambda(const QuadratureConfig& cfg, Bracket bracket, double tol) {
  if (!(bracket.lo > 0.0)) {
    throw DomainError(fmt::format("lambda bracket must be positive, got lo={}", bracket.lo));
  }
  return bisect([&cfg](double lambda) { return midpoint_energy_scaled(lambda, cfg).u_mid_scaled; },
                bracket, tol);
}

double critical_separation_physical(double lambda_c, double omega_p_ev) {
  if (!(omega_p_ev > 0.0) || !std::isfinite(omega_p_ev)) {
    throw DomainError(fmt::format("plasma frequency must be positive, got {} eV", omega_p_ev));
  }
  if (!(lambda_c > 0.0) || !std::isfinite(lambda_c)) {
    throw DomainError(fmt::format("critical wp a must be positive, got {}", lambda_c));
  }
  constexpr double kNmPerMicron = 1000.0;
  return lambda_c * kHbarCEvNm / omega_p_ev / kNmPerMicron;
}

double wall_reduction_check(double a, const DielectricModel& model, double z_small,
                            const QuadratureConfig& cfg) {
  if (model.is_perfect_conductor() || model.is_vacuum()) {
    throw NotApplicable(fmt::format(
        "single-interface energy density vanishes for model '{}'; ratio undefined", model.name()));
  }
  const auto gap = Geometry::cavity(a);
  const auto cavity_u = integrate_field(FieldKind::EnergyDensity, gap, model, z_small, cfg);
  const auto single_u =
      integrate_field(FieldKind::EnergyDensity, Geometry::single_interface(), model, z_small, cfg);
  if (single_u.value == 0.0) throw NotApplicable("single-interface energy density is zero");
  return cavity_u.value / single_u.value;
}

}  // namespace casimir
