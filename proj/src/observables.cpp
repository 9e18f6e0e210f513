#include "kpo/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kpo/log.hpp"

namespace kpo {

double photon_number(const StateVector& state, const FockSpace& space) {
  return expval_real(number_op(space), state);
}

double quadrature(const StateVector& state, const FockSpace& space) {
  const OperatorMatrix a = annihilation(space);
  return expval_real((a.adjoint() + a) / 2.0, state);
}

double f_sp(const StateVector& state, const SpinSpace& space) {
  // s - <s^x> = sum_n n |x<s-n|psi>|^2, which is nonnegative term by term.
  const StateVector c = to_x_basis(state, space);
  double acc = 0.0;
  for (Eigen::Index n = 1; n < c.size(); ++n) acc += static_cast<double>(n) * std::norm(c(n));
  return acc / c.squaredNorm();
}

double f_sq(const StateVector& state, const SpinSpace& space, double alpha, ExpansionOrder order) {
  const double denom = expansion_denominator(space, alpha);
  const auto ops = spin_ops(space);
  const double mz = expval_real(ops.sz, state);
  if (order == ExpansionOrder::First) return mz / std::sqrt(denom);
  const double root = std::sqrt(denom);
  const double root3 = denom * root;
  const double anti = expval_real(anticommutator(ops.sx, ops.sz), state);
  return (5.0 / (4.0 * root) - (1.0 + alpha * alpha) / (4.0 * root3)) * mz - anti / (4.0 * root3);
}

double correlation_boson(const StateVector& state, const FockSpace& space) {
  const OperatorMatrix a = annihilation(space);
  const OperatorMatrix x = a.adjoint() + a;
  const auto eye = identity(space.dim());
  return expval_real(kron(x, eye) * kron(eye, x), state) / 4.0;
}

double correlation_spin(const StateVector& state, const SpinSpace& space, double alpha) {
  const double denom = expansion_denominator(space, alpha);
  const auto ops = spin_ops(space);
  return expval_real(kron(ops.sz, ops.sz), state) / denom;
}

double overlap(const StateVector& boson_state, const StateVector& spin_state, const SpinSpace& spin) {
  const StateVector coeffs = to_x_basis(spin_state, spin);
  const Eigen::Index terms = std::min<Eigen::Index>(coeffs.size(), boson_state.size());
  return std::abs(boson_state.head(terms).dot(coeffs.head(terms)));
}

double WignerGrid::integral() const {
  const double dx = x_axis.size() > 1 ? x_axis(1) - x_axis(0) : 1.0;
  const double dy = y_axis.size() > 1 ? y_axis(1) - y_axis(0) : 1.0;
  return values.sum() * dx * dy;
}

namespace {

RealVector axis(double lo, double hi, int n) {
  if (n < 1) throw InvalidArgument("wigner: grid needs at least one point per axis");
  if (n == 1) return RealVector::Constant(1, lo);
  RealVector v(n);
  for (int i = 0; i < n; ++i) v(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Number of levels the displaced states need: a state supported on the
// first m levels, displaced by |beta| <= b, lives essentially below
// (sqrt(m) + b)^2 plus a few widths.
Eigen::Index working_dim(const std::vector<std::pair<double, StateVector>>& mixture, const WignerGridSpec& spec) {
  Eigen::Index support = 1;
  for (const auto& [weight, psi] : mixture) {
    double tail = 0.0;
    Eigen::Index k = psi.size();
    while (k > 1 && tail + std::norm(psi(k - 1)) < 1e-14) tail += std::norm(psi(--k));
    support = std::max(support, k);
  }
  const double bx = std::max(std::abs(spec.x_min), std::abs(spec.x_max));
  const double by = std::max(std::abs(spec.y_min), std::abs(spec.y_max));
  const double reach = std::sqrt(static_cast<double>(support)) + std::hypot(bx, by) / std::numbers::sqrt2;
  const auto needed = static_cast<Eigen::Index>(std::ceil(reach * reach + 4.0 * reach + 10.0));
  return std::min(needed, static_cast<Eigen::Index>(kWignerMaxDim));
}

// Evaluates W for a batch of pure states with weights, sharing one
// factorization of the displacement generator:
//   a^dag - a = -i V diag(lambda) V^dag,   R_phi (a^dag - a) R_phi^dag = e^{i phi} a^dag - e^{-i phi} a,
// so D(beta) = R_phi V exp(-i r lambda) V^dag R_phi^dag with beta = r e^{i phi}.
// States are zero-padded to a working space large enough for the grid, so
// the result does not depend on the caller's cutoff.
WignerGrid evaluate(const std::vector<std::pair<double, StateVector>>& mixture, const FockSpace& space,
                    const WignerGridSpec& spec) {
  const auto n = std::max(space.dim(), working_dim(mixture, spec));
  const FockSpace work(static_cast<int>(n));
  const OperatorMatrix a = annihilation(work);
  const OperatorMatrix gen = Complex(0.0, 1.0) * (a.adjoint() - a);
  const auto eig = herm_eig(gen);
  const OperatorMatrix& v = eig.eigenvectors;
  const OperatorMatrix vh = v.adjoint();
  RealVector parity_signs(n);
  for (Eigen::Index k = 0; k < n; ++k) parity_signs(k) = (k % 2 == 0) ? 1.0 : -1.0;

  WignerGrid grid;
  grid.x_axis = axis(spec.x_min, spec.x_max, spec.nx);
  grid.y_axis = axis(spec.y_min, spec.y_max, spec.ny);
  grid.values = Matrix<double>::Zero(spec.nx, spec.ny);

  std::vector<StateVector> padded;
  for (const auto& [weight, psi] : mixture) {
    StateVector p = StateVector::Zero(n);
    p.head(psi.size()) = psi;
    padded.push_back(std::move(p));
  }

  const Eigen::Index edge = std::max<Eigen::Index>(1, n / 10);
  double edge_weight = 0.0;
  StateVector rot(n), tmp(n), phi(n);
  for (int ix = 0; ix < spec.nx; ++ix) {
    for (int iy = 0; iy < spec.ny; ++iy) {
      const Complex beta = Complex(grid.x_axis(ix), grid.y_axis(iy)) / std::numbers::sqrt2;
      const double r = std::abs(beta);
      const double angle = std::arg(beta);
      double w = 0.0;
      for (std::size_t m = 0; m < padded.size(); ++m) {
        const StateVector& psi = padded[m];
        // phi = D(beta)^dag psi, up to the trailing diagonal phase R_phi,
        // which the parity-weighted norm below does not see.
        for (Eigen::Index k = 0; k < n; ++k) rot(k) = std::polar(1.0, -angle * static_cast<double>(k)) * psi(k);
        tmp.noalias() = vh * rot;
        for (Eigen::Index k = 0; k < n; ++k) tmp(k) *= std::polar(1.0, r * eig.eigenvalues(k));
        phi.noalias() = v * tmp;
        double acc = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) acc += parity_signs(k) * std::norm(phi(k));
        w += mixture[m].first * acc;
        edge_weight = std::max(edge_weight, phi.tail(edge).squaredNorm());
      }
      grid.values(ix, iy) = w / std::numbers::pi;
    }
  }
  if (edge_weight > 1e-8) {
    std::ostringstream os;
    os << "wigner: displaced states reach the top of the " << n << "-level working space (weight " << edge_weight
       << "); values near the grid edge are unreliable";
    warn(os.str());
  }
  return grid;
}

void warn_if_truncated(double mean_photons, const FockSpace& space) {
  if (mean_photons > space.cutoff() / 4.0) {
    std::ostringstream os;
    os << "wigner: <n> = " << mean_photons << " exceeds cutoff/4 = " << space.cutoff() / 4.0
       << "; the displaced grid may be truncation-limited";
    warn(os.str());
  }
}

}  // namespace

WignerGrid wigner(const StateVector& state, const FockSpace& space, const WignerGridSpec& spec) {
  if (state.size() != space.dim()) throw DimensionMismatch("wigner: state length differs from the Fock cutoff");
  const StateVector psi = state.normalized();
  warn_if_truncated(photon_number(psi, space), space);
  return evaluate({{1.0, psi}}, space, spec);
}

WignerGrid wigner(const OperatorMatrix& rho, const FockSpace& space, const WignerGridSpec& spec) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim())
    throw DimensionMismatch("wigner: density matrix shape differs from the Fock cutoff");
  const auto eig = herm_eig(rho, 1e-10);
  std::vector<std::pair<double, StateVector>> mixture;
  double mean_photons = 0.0;
  const OperatorMatrix num = number_op(space);
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double weight = eig.eigenvalues(k);
    if (std::abs(weight) < 1e-14) continue;
    StateVector col = eig.eigenvectors.col(k);
    mean_photons += weight * expval_real(num, col);
    mixture.emplace_back(weight, std::move(col));
  }
  warn_if_truncated(mean_photons, space);
  return evaluate(mixture, space, spec);
}

WignerGrid wigner_spin(const StateVector& spin_state, const SpinSpace& spin, const FockSpace& fock,
                       const WignerGridSpec& spec) {
  return wigner(embed_spin_state(spin_state, spin, fock), fock, spec);
}

}  // namespace kpo
