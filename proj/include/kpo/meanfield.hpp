#pragma once

#include <span>
#include <vector>

#include "kpo/hamiltonians.hpp"
#include "kpo/spaces.hpp"

namespace kpo {

enum class MeanFieldModel { Boson, Spin };

/// Which mean-field Hamiltonian to iterate. The spin model resolves alpha from
/// `spin_model.alpha_rule` at every pump value (alpha_c0 by default).
struct MeanFieldSetup {
  MeanFieldModel model = MeanFieldModel::Boson;
  double coupling = 0.2;  // J, coordination number included
  FockSpace fock{};
  SpinSpace spin{1.0};
  SpinModelParams spin_model{AlphaRule::semiclassical_no_drive(), ExpansionOrder::First, true};
};

struct MeanFieldOptions {
  double tol = 1e-10;
  double damping = 0.5;
  double seed = 1e-3;
  int max_iter = 500;
  bool accelerate = true;  // bracket the fixed point when steps stay monotone
};

enum class MeanFieldStatus { Converged, NoConvergence, OscillationDetected };

struct MeanFieldSolution {
  double order_param = 0.0;  // x (boson) or m^z (spin), >= 0
  double scaled = 0.0;       // x (boson) or m^z / sqrt(2s - alpha^2) (spin)
  double alpha = 0.0;        // expansion point used by the spin model
  int iterations = 0;  // evaluations of the map
  bool converged = false;
  double residual = 0.0;  // last |x_{k+1} - x_k|
  MeanFieldStatus status = MeanFieldStatus::NoConvergence;
};

/// <a> (boson) or <s^z> (spin) in the ground state of the mean-field
/// Hamiltonian at the given order parameter; one application of the map.
double mean_field_map(const MeanFieldSetup& setup, const KpoParams& kpo, double order_param);

/// Damped fixed-point iteration x <- (1 - d) x + d max(0, map(x)) from a
/// positive seed. A detected period-2 cycle halves the damping once. A long
/// monotone run switches to bracketing the root of f(x) - x ahead of it.
MeanFieldSolution solve_mf(const MeanFieldSetup& setup, const KpoParams& kpo, const MeanFieldOptions& options = {});

/// One solve per pump value, warm-started from the previous solution plus the seed.
std::vector<MeanFieldSolution> magnetization_curve(const MeanFieldSetup& setup, const KpoParams& kpo,
                                                   std::span<const double> pump_grid,
                                                   const MeanFieldOptions& options = {});

struct CriticalPumpOptions {
  double coarse_step = 0.02;
  double bracket_width = 1e-4;
  double onset_tol = 1e-4;
  MeanFieldOptions solver{};
};

/// Pump values where the order parameter switches on or off, located on a
/// coarse grid and refined by bisection. At most two; more raises GridTooCoarse.
std::vector<double> critical_pump(const MeanFieldSetup& setup, const KpoParams& kpo, double p_min, double p_max,
                                  const CriticalPumpOptions& options = {});

struct PhaseBoundary {
  std::vector<double> delta_grid;
  std::vector<std::vector<double>> pc_values;  // ascending, 0-2 entries per detuning
  std::vector<bool> reentrant;                 // two crossings
};

/// critical_pump across detunings (drive fixed by `base.drive`, pump ignored).
PhaseBoundary phase_boundary(const MeanFieldSetup& setup, const KpoParams& base, std::span<const double> delta_grid,
                             double p_min, double p_max, const CriticalPumpOptions& options = {},
                             unsigned threads = 0);

}  // namespace kpo
