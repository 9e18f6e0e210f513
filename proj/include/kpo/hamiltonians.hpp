#pragma once

#include <string>

#include "kpo/qmatrix.hpp"
#include "kpo/spaces.hpp"

namespace kpo {

/// Single-oscillator parameters in units of the Kerr coefficient (K = 1).
struct KpoParams {
  double delta = 0.0;  // detuning
  double pump = 0.0;   // parametric drive amplitude
  double drive = 0.0;  // coherent drive amplitude
};

/// Two coupled oscillators. Both sites share detuning and pump.
struct PairParams {
  KpoParams site1;
  KpoParams site2;
  double coupling = 0.0;  // J, symmetric
  double xi0 = 1.0;
};

/// How the expansion point alpha of the shifted spin mapping is chosen.
struct AlphaRule {
  enum class Kind { Zero, SemiclassicalWithDrive, SemiclassicalNoDrive, ExactPhoton, Fixed };
  Kind kind = Kind::Zero;
  double value = 0.0;  // only for Fixed

  static AlphaRule zero() { return {Kind::Zero, 0.0}; }
  static AlphaRule semiclassical() { return {Kind::SemiclassicalWithDrive, 0.0}; }
  static AlphaRule semiclassical_no_drive() { return {Kind::SemiclassicalNoDrive, 0.0}; }
  static AlphaRule exact_photon() { return {Kind::ExactPhoton, 0.0}; }
  static AlphaRule fixed(double alpha) { return {Kind::Fixed, alpha}; }
};

/// Parses zero | semiclassical | semiclassical-nodrive | exact | fixed:<value>.
AlphaRule parse_alpha_rule(const std::string& text);
std::string to_string(const AlphaRule& rule);

enum class ExpansionOrder { First, Second };

struct SpinModelParams {
  AlphaRule alpha_rule = AlphaRule::zero();
  ExpansionOrder order = ExpansionOrder::First;
  bool couple_yy = true;  // pair models only
};

/// Semiclassical occupancy estimate including the drive:
/// sqrt(p - delta + |eps| / sqrt(p - delta)) when p - delta - eps >= 0, else 0.
/// Returns 0 whenever p - delta <= 0.
double alpha_c(const KpoParams& params);

/// sqrt(p - delta) for p >= delta, else 0.
double alpha_c0(const KpoParams& params);

/// Resolve the rule for a single site. ExactPhoton diagonalizes the bosonic
/// model in `fock` and returns sqrt(<n>).
double resolve_alpha(const AlphaRule& rule, const KpoParams& params, const FockSpace& fock = FockSpace{});

/// 2s - alpha^2, throwing AlphaOutOfRange unless it is positive.
double expansion_denominator(const SpinSpace& space, double alpha);

/// Delta n + (1/2) a^dag^2 a^2 - (p/2)(a^dag^2 + a^2) - eps (a^dag + a).
OperatorMatrix build_kpo(const FockSpace& space, const KpoParams& params);

OperatorMatrix build_kpo_pair(const FockSpace& space, const PairParams& params);

/// Spin model at the resolved alpha. Dispatches on `sp.order`.
OperatorMatrix build_spin(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp);

/// First-order spin model for an explicit alpha.
OperatorMatrix build_spin_first(const SpinSpace& space, const KpoParams& kpo, double alpha);

/// Spin model with the next term of the square-root expansion kept.
OperatorMatrix build_spin_second(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp);
OperatorMatrix build_spin_second(const SpinSpace& space, const KpoParams& kpo, double alpha);

/// Two spins with -2 xi0 J / (2s - alpha^2) (z1 z2 [+ y1 y2]) coupling.
OperatorMatrix build_spin_pair(const SpinSpace& space, const PairParams& params, const SpinModelParams& sp);

/// Alpha used by build_spin_pair; both sites must resolve to the same value.
double resolve_pair_alpha(const PairParams& params, const SpinModelParams& sp);

/// build_kpo - J x (a^dag + a).
OperatorMatrix build_mf_boson(const FockSpace& space, const KpoParams& kpo, double coupling, double x);

/// build_spin - 2 J / (2s - alpha^2) m^z s^z.
OperatorMatrix build_mf_spin(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp,
                             double coupling, double mz);

}  // namespace kpo
