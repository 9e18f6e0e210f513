#include "kpo/meanfield.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "kpo/groundstate.hpp"
#include "kpo/parallel.hpp"

namespace kpo {

double mean_field_map(const MeanFieldSetup& setup, const KpoParams& kpo, double order_param) {
  // With no symmetry-breaking field the doublet at delta = 0 is exactly
  // degenerate; pick the even member so x = 0 stays a fixed point.
  const bool symmetric = order_param == 0.0 && kpo.drive == 0.0;
  if (setup.model == MeanFieldModel::Boson) {
    const OperatorMatrix h = build_mf_boson(setup.fock, kpo, setup.coupling, order_param);
    const auto gs = ground_state(h, symmetric ? std::optional(parity(setup.fock)) : std::nullopt);
    return expval(annihilation(setup.fock), gs.state).real();
  }
  const OperatorMatrix h = build_mf_spin(setup.spin, kpo, setup.spin_model, setup.coupling, order_param);
  const auto gs = ground_state(h, symmetric ? std::optional(spin_x_parity(setup.spin)) : std::nullopt);
  return expval_real(spin_ops(setup.spin).sz, gs.state);
}

namespace {

// March from x in the direction of `step` until g changes sign (x = 0 counts,
// since g(0) >= 0 by the clamp), then refine with Illinois regula falsi until
// a damped step from the result would be below tol.
template <typename G>
double bracket_fixed_point(G&& g, double x, double step, double damping, double tol) {
  const double dir = step > 0.0 ? 1.0 : -1.0;
  double a = x;
  double ga = g(a);
  if (dir * ga <= 0.0) return a;
  double h = 4.0 * std::abs(step);
  double b = a;
  double gb = ga;
  for (int k = 0; k < 200; ++k) {
    b = std::max(0.0, a + dir * h);
    gb = g(b);
    if (dir * gb <= 0.0 || b == 0.0) break;
    a = b;
    ga = gb;
    h *= 2.0;
  }
  if (dir * gb > 0.0) return b;
  int side = 0;
  for (int k = 0; k < 200; ++k) {
    if (std::abs(gb) * damping <= 0.5 * tol || std::abs(b - a) <= 0.5 * tol) break;
    const double c = (a * gb - b * ga) / (gb - ga);
    const double gc = g(c);
    if (gc * gb < 0.0) {
      a = b;
      ga = gb;
      side = 0;
    } else if (++side >= 2) {
      ga *= 0.5;
    }
    b = c;
    gb = gc;
  }
  return std::abs(ga) < std::abs(gb) ? a : b;
}

}  // namespace

MeanFieldSolution solve_mf(const MeanFieldSetup& setup, const KpoParams& kpo, const MeanFieldOptions& options) {
  if (!(options.seed > 0.0)) throw InvalidArgument("solve_mf: seed must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) throw InvalidArgument("solve_mf: damping must be in (0, 1]");
  if (options.max_iter < 1) throw InvalidArgument("solve_mf: max_iter must be positive");

  MeanFieldSolution sol;
  if (setup.model == MeanFieldModel::Spin) {
    sol.alpha = resolve_alpha(setup.spin_model.alpha_rule, kpo);
    expansion_denominator(setup.spin, sol.alpha);
  }

  double damping = options.damping;
  bool halved = false;
  int flips = 0;
  double x = options.seed;
  double prev_step = 0.0;
  int monotone = 0;
  int evaluations = 0;
  auto g = [&](double y) {
    ++evaluations;
    return std::max(0.0, mean_field_map(setup, kpo, y)) - y;
  };
  sol.status = MeanFieldStatus::NoConvergence;

  for (int k = 1; k <= options.max_iter; ++k) {
    const double target = x + g(x);
    const double next = (1.0 - damping) * x + damping * target;
    const double step = next - x;
    x = next;
    sol.residual = std::abs(step);
    if (sol.residual <= options.tol) {
      sol.status = MeanFieldStatus::Converged;
      break;
    }
    // Period-2 signature: alternating steps that do not shrink.
    if (step * prev_step < 0.0 && std::abs(step) >= 0.999 * std::abs(prev_step)) {
      if (++flips >= 3) {
        if (halved) {
          sol.status = MeanFieldStatus::OscillationDetected;
          break;
        }
        damping *= 0.5;
        halved = true;
        flips = 0;
      }
    } else {
      flips = 0;
    }
    // Near a critical point the iteration crawls monotonically; locate the
    // fixed point it is heading for by bracketing g(x) = f(x) - x instead.
    monotone = (step * prev_step > 0.0) ? monotone + 1 : 0;
    if (options.accelerate && monotone >= 8) {
      x = bracket_fixed_point(g, x, step, damping, options.tol);
      monotone = 0;
      prev_step = 0.0;
      continue;
    }
    prev_step = step;
  }

  sol.iterations = evaluations;
  sol.converged = sol.status == MeanFieldStatus::Converged;
  sol.order_param = x;
  sol.scaled = setup.model == MeanFieldModel::Spin ? x / std::sqrt(expansion_denominator(setup.spin, sol.alpha)) : x;
  return sol;
}

std::vector<MeanFieldSolution> magnetization_curve(const MeanFieldSetup& setup, const KpoParams& kpo,
                                                   std::span<const double> pump_grid,
                                                   const MeanFieldOptions& options) {
  for (std::size_t i = 1; i < pump_grid.size(); ++i)
    if (!(pump_grid[i] > pump_grid[i - 1])) throw InvalidArgument("magnetization_curve: pump grid must ascend");
  std::vector<MeanFieldSolution> out;
  out.reserve(pump_grid.size());
  MeanFieldOptions local = options;
  for (double p : pump_grid) {
    KpoParams point = kpo;
    point.pump = p;
    out.push_back(solve_mf(setup, point, local));
    local.seed = out.back().order_param + options.seed;
  }
  return out;
}

std::vector<double> critical_pump(const MeanFieldSetup& setup, const KpoParams& kpo, double p_min, double p_max,
                                  const CriticalPumpOptions& options) {
  if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_max > p_min))
    throw InvalidArgument("critical_pump: need a finite range with p_max > p_min");
  if (!(options.coarse_step > 0.0)) throw InvalidArgument("critical_pump: coarse step must be positive");

  auto ordered = [&](double p) {
    KpoParams point = kpo;
    point.pump = p;
    return solve_mf(setup, point, options.solver).order_param > options.onset_tol;
  };

  const auto steps = static_cast<long>(std::ceil((p_max - p_min) / options.coarse_step - 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= steps; ++i) grid.push_back(std::min(p_max, p_min + static_cast<double>(i) * options.coarse_step));

  std::vector<double> crossings;
  bool prev = ordered(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool cur = ordered(grid[i]);
    if (cur != prev) {
      double lo = grid[i - 1];
      double hi = grid[i];
      while (hi - lo > options.bracket_width) {
        const double mid = 0.5 * (lo + hi);
        (ordered(mid) == prev ? lo : hi) = mid;
      }
      crossings.push_back(0.5 * (lo + hi));
      if (crossings.size() > 2) {
        std::ostringstream os;
        os << "critical_pump: more than two crossings below p = " << grid[i] << " at delta = " << kpo.delta;
        throw GridTooCoarse(os.str());
      }
    }
    prev = cur;
  }
  return crossings;
}

PhaseBoundary phase_boundary(const MeanFieldSetup& setup, const KpoParams& base, std::span<const double> delta_grid,
                             double p_min, double p_max, const CriticalPumpOptions& options, unsigned threads) {
  PhaseBoundary out;
  out.delta_grid.assign(delta_grid.begin(), delta_grid.end());
  out.pc_values.resize(delta_grid.size());
  out.reentrant.resize(delta_grid.size());
  parallel_for(delta_grid.size(), threads, [&](std::size_t i) {
    KpoParams kpo = base;
    kpo.delta = delta_grid[i];
    out.pc_values[i] = critical_pump(setup, kpo, p_min, p_max, options);
  });
  for (std::size_t i = 0; i < delta_grid.size(); ++i) out.reentrant[i] = out.pc_values[i].size() == 2;
  return out;
}

}  // namespace kpo
