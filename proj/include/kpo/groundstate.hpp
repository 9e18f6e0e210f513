#pragma once

#include <optional>

#include "kpo/qmatrix.hpp"

namespace kpo {

enum class Sector { None, EvenParity, OddParity };

struct GroundStateResult {
  double energy = 0.0;
  StateVector state;
  double gap = 0.0;  // E1 - E0 of the full spectrum
  Sector sector = Sector::None;
  bool degenerate = false;
};

/// Default degeneracy threshold: 1e-8 * max(1, |E0|).
double default_deg_tol(double e0);

/// Lowest eigenstate of h. When the lowest level is degenerate below `deg_tol`
/// and a symmetry S (S^2 = I, [h, S] = 0) is supplied, the degenerate cluster is
/// projected onto the S = +1 sector and the most-even combination returned.
GroundStateResult ground_state(const OperatorMatrix& h, const std::optional<OperatorMatrix>& symmetry = std::nullopt,
                               std::optional<double> deg_tol = std::nullopt);

}  // namespace kpo
