#include "kpo/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kpo {

double default_deg_tol(double e0) { return 1e-8 * std::max(1.0, std::abs(e0)); }

namespace {

void check_symmetry(const OperatorMatrix& h, const OperatorMatrix& sym) {
  if (sym.rows() != h.rows() || sym.cols() != h.cols())
    throw DimensionMismatch("ground_state: symmetry operator has the wrong shape");
  const double scale = std::max(1.0, max_abs(h));
  const double comm = max_abs(commutator(h, sym));
  if (comm > 1e-8 * scale) {
    std::ostringstream os;
    os << "ground_state: symmetry does not commute with H (max|[H,S]| = " << comm << ")";
    throw SymmetryViolation(os.str());
  }
  const double square = max_abs(sym * sym - OperatorMatrix::Identity(sym.rows(), sym.cols()));
  if (square > 1e-8) throw SymmetryViolation("ground_state: symmetry operator does not square to identity");
}

}  // namespace

GroundStateResult ground_state(const OperatorMatrix& h, const std::optional<OperatorMatrix>& symmetry,
                               std::optional<double> deg_tol) {
  if (symmetry) check_symmetry(h, *symmetry);

  const auto eig = herm_eig(h);
  const auto n = eig.eigenvalues.size();
  const double e0 = eig.eigenvalues(0);

  GroundStateResult out;
  out.gap = n > 1 ? eig.eigenvalues(1) - e0 : std::numeric_limits<double>::infinity();
  const double tol = deg_tol.value_or(default_deg_tol(e0));
  out.degenerate = out.gap < tol;

  if (!out.degenerate || !symmetry) {
    out.state = eig.eigenvectors.col(0);
    out.energy = e0;
    return out;
  }

  Eigen::Index cluster = 1;
  while (cluster < n && eig.eigenvalues(cluster) - e0 < tol) ++cluster;

  const OperatorMatrix projector =
      (OperatorMatrix::Identity(h.rows(), h.cols()) + *symmetry) / 2.0;
  const OperatorMatrix projected = projector * eig.eigenvectors.leftCols(cluster);
  // Combination of the cluster with the largest even weight.
  const OperatorMatrix gram = projected.adjoint() * projected;
  const auto small = herm_eig(gram, 1e-8);
  const double weight = small.eigenvalues(cluster - 1);

  if (weight < 1e-6) {
    // Degenerate cluster carries no even component; report the odd state.
    out.state = eig.eigenvectors.col(0);
    out.sector = Sector::OddParity;
  } else {
    out.state = (projected * small.eigenvectors.col(cluster - 1)).normalized();
    out.sector = Sector::EvenParity;
    detail::normalize_phases(out.state);
  }
  out.energy = expval_real(h, out.state);
  return out;
}

}  // namespace kpo
