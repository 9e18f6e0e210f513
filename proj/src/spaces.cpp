#include "kpo/spaces.hpp"

#include <cmath>
#include <mutex>
#include <map>
#include <sstream>

#include "kpo/log.hpp"

namespace kpo {

FockSpace::FockSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) throw InvalidArgument("FockSpace: cutoff must be at least 2");
  if (cutoff > kMaxDim) throw DimensionOverflow("FockSpace: cutoff exceeds matrix limit");
}

SpinSpace::SpinSpace(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (!(s > 0.0) || std::abs(twice - rounded) > 1e-12) {
    std::ostringstream os;
    os << "SpinSpace: s must be a positive integer or half-integer, got " << s;
    throw InvalidArgument(os.str());
  }
  two_s_ = static_cast<int>(rounded);
  if (dim() > kMaxDim) throw DimensionOverflow("SpinSpace: dimension exceeds matrix limit");
}

SpinSpace SpinSpace::from_twice(int two_s) { return SpinSpace(0.5 * two_s); }

OperatorMatrix annihilation(const FockSpace& space) {
  const auto n = space.dim();
  OperatorMatrix a = OperatorMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

OperatorMatrix creation(const FockSpace& space) { return annihilation(space).adjoint(); }

OperatorMatrix number_op(const FockSpace& space) {
  RealVector diag = RealVector::LinSpaced(space.dim(), 0.0, static_cast<double>(space.dim() - 1));
  return diag.cast<Complex>().asDiagonal();
}

OperatorMatrix parity(const FockSpace& space) {
  StateVector diag(space.dim());
  for (Eigen::Index k = 0; k < space.dim(); ++k) diag(k) = (k % 2 == 0) ? 1.0 : -1.0;
  return diag.asDiagonal();
}

StateVector fock_state(const FockSpace& space, int n) {
  if (n < 0 || n >= space.cutoff()) throw InvalidArgument("fock_state: photon number outside the truncated space");
  StateVector v = StateVector::Zero(space.dim());
  v(n) = 1.0;
  return v;
}

StateVector coherent_state(const FockSpace& space, Complex alpha) {
  if (std::norm(alpha) > space.cutoff() / 4.0) {
    std::ostringstream os;
    os << "coherent_state: |alpha|^2 = " << std::norm(alpha) << " exceeds cutoff/4 = " << space.cutoff() / 4.0
       << "; truncation is unreliable";
    warn(os.str());
  }
  StateVector c(space.dim());
  c(0) = 1.0;
  for (Eigen::Index n = 1; n < space.dim(); ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c.normalized();
}

SpinOps spin_ops(const SpinSpace& space) {
  const auto d = space.dim();
  const double s = space.s();
  OperatorMatrix sp = OperatorMatrix::Zero(d, d);
  OperatorMatrix sz = OperatorMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = s - static_cast<double>(k);
    sz(k, k) = m;
    // s^+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; row k-1 holds m+1.
    if (k > 0) sp(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const OperatorMatrix sm = sp.adjoint();
  return SpinOps{(sp + sm) / 2.0, (sp - sm) / Complex(0.0, 2.0), sz};
}

namespace {

OperatorMatrix build_x_basis(const SpinSpace& space) {
  const auto ops = spin_ops(space);
  const auto d = space.dim();
  // s^x is real symmetric; its spectrum s, s-1, ..., -s is non-degenerate.
  const auto eig = herm_eig(ops.sx);
  OperatorMatrix u(d, d);
  for (Eigen::Index n = 0; n < d; ++n) u.col(n) = eig.eigenvectors.col(d - 1 - n);
  for (Eigen::Index n = 0; n + 1 < d; ++n) {
    const double gap = eig.eigenvalues(d - 1 - n) - eig.eigenvalues(d - 2 - n);
    if (!(gap > 0.5)) throw Error("x_basis: degenerate s^x eigenbasis");
  }
  // Column 0 already carries the herm_eig phase convention.
  for (Eigen::Index n = 0; n + 1 < d; ++n) {
    const Complex elem = u.col(n + 1).dot(ops.sz * u.col(n));
    if (!(std::abs(elem) > 1e-12)) throw Error("x_basis: vanishing s^z ladder element");
    u.col(n + 1) *= elem / std::abs(elem);
  }
  return u;
}

}  // namespace

OperatorMatrix x_basis(const SpinSpace& space) {
  static std::mutex mutex;
  static std::map<int, OperatorMatrix> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(space.two_s());
  if (it == cache.end()) it = cache.emplace(space.two_s(), build_x_basis(space)).first;
  return it->second;
}

OperatorMatrix spin_x_parity(const SpinSpace& space) {
  const OperatorMatrix u = x_basis(space);
  StateVector signs(space.dim());
  for (Eigen::Index n = 0; n < space.dim(); ++n) signs(n) = (n % 2 == 0) ? 1.0 : -1.0;
  return u * signs.asDiagonal() * u.adjoint();
}

StateVector spin_coherent(const SpinSpace& space, double theta) {
  const auto ops = spin_ops(space);
  const OperatorMatrix rot = unitary_exp(Complex(0.0, theta) * ops.sy);
  return rot * x_basis(space).col(0);
}

StateVector to_x_basis(const StateVector& spin_state, const SpinSpace& spin) {
  if (spin_state.size() != spin.dim()) throw DimensionMismatch("to_x_basis: state length differs from 2s+1");
  return x_basis(spin).adjoint() * spin_state;
}

StateVector embed_spin_state(const StateVector& spin_state, const SpinSpace& spin, const FockSpace& fock) {
  if (fock.dim() < spin.dim()) {
    std::ostringstream os;
    os << "embed_spin_state: Fock cutoff " << fock.cutoff() << " cannot hold 2s+1 = " << spin.dim() << " levels";
    throw CutoffTooSmall(os.str());
  }
  StateVector out = StateVector::Zero(fock.dim());
  out.head(spin.dim()) = to_x_basis(spin_state, spin);
  return out;
}

}  // namespace kpo
