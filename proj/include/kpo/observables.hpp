#pragma once

#include "kpo/hamiltonians.hpp"
#include "kpo/qmatrix.hpp"
#include "kpo/spaces.hpp"

namespace kpo {

double photon_number(const StateVector& state, const FockSpace& space);

/// <(a^dag + a)/2>
double quadrature(const StateVector& state, const FockSpace& space);

/// Spin counterpart of the photon number, s - <s^x>.
double f_sp(const StateVector& state, const SpinSpace& space);

/// Spin counterpart of the quadrature. First order: <s^z>/sqrt(2s - alpha^2).
/// Second order adds the anticommutator correction.
double f_sq(const StateVector& state, const SpinSpace& space, double alpha,
            ExpansionOrder order = ExpansionOrder::First);

/// <(a1^dag + a1)(a2^dag + a2)>/4 on the two-mode space built from `space`.
double correlation_boson(const StateVector& state, const FockSpace& space);

/// <s1^z s2^z>/(2s - alpha^2).
double correlation_spin(const StateVector& state, const SpinSpace& space, double alpha);

/// |sum_{n=0}^{2s} <psi_b|n> x<s-n, s|psi_s>|. Boson amplitudes beyond the
/// truncated space are zero, so a cutoff below 2s+1 just shortens the sum.
double overlap(const StateVector& boson_state, const StateVector& spin_state, const SpinSpace& spin);

/// Upper bound on the internal Fock space used to displace states over a grid.
inline constexpr int kWignerMaxDim = 400;

struct WignerGridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  int nx = 161;
  double y_min = -4.0;
  double y_max = 4.0;
  int ny = 161;

  static WignerGridSpec square(double half_width, int points) {
    return {-half_width, half_width, points, -half_width, half_width, points};
  }
};

/// Axes are x = sqrt(2) Re(beta), y = sqrt(2) Im(beta); values(ix, iy) = W(x_ix, y_iy).
struct WignerGrid {
  RealVector x_axis;
  RealVector y_axis;
  Matrix<double> values;

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  /// Riemann sum of W over the grid (uniform spacing assumed).
  double integral() const;
};

/// W = (1/pi) Tr[rho D(beta) P D(beta)^dag] evaluated on a grid.
WignerGrid wigner(const StateVector& state, const FockSpace& space, const WignerGridSpec& spec = {});
WignerGrid wigner(const OperatorMatrix& rho, const FockSpace& space, const WignerGridSpec& spec = {});

/// Wigner function of a spin state mapped into `fock` through the x basis.
WignerGrid wigner_spin(const StateVector& spin_state, const SpinSpace& spin, const FockSpace& fock,
                       const WignerGridSpec& spec = {});

}  // namespace kpo
