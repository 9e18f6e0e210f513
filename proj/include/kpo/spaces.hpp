#pragma once

#include <complex>

#include "kpo/qmatrix.hpp"

namespace kpo {

/// Truncated bosonic mode spanned by |0>, ..., |cutoff-1>.
class FockSpace {
 public:
  static constexpr int kDefaultCutoff = 20;

  explicit FockSpace(int cutoff = kDefaultCutoff);

  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return cutoff_; }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int cutoff_;
};

/// Spin-s representation, dim = 2s + 1. Stored as 2s to keep half-integers exact.
class SpinSpace {
 public:
  explicit SpinSpace(double s);
  static SpinSpace from_twice(int two_s);

  double s() const { return 0.5 * two_s_; }
  int two_s() const { return two_s_; }
  Eigen::Index dim() const { return two_s_ + 1; }

  friend bool operator==(const SpinSpace&, const SpinSpace&) = default;

 private:
  SpinSpace() = default;
  int two_s_ = 1;
};

struct SpinOps {
  OperatorMatrix sx;
  OperatorMatrix sy;
  OperatorMatrix sz;
};

OperatorMatrix annihilation(const FockSpace& space);
OperatorMatrix creation(const FockSpace& space);
OperatorMatrix number_op(const FockSpace& space);
OperatorMatrix parity(const FockSpace& space);

/// Truncated coherent state, c_n ~ alpha^n / sqrt(n!), renormalized.
StateVector coherent_state(const FockSpace& space, Complex alpha);
StateVector fock_state(const FockSpace& space, int n);

/// Spin matrices in the s^z eigenbasis, s^z = diag(s, s-1, ..., -s).
SpinOps spin_ops(const SpinSpace& space);

/// Columns are s^x eigenvectors in descending eigenvalue order, so column n is
/// |s-n, s>_x and pairs with the Fock state |n>. Phases: column 0 has its
/// largest component real positive, and every <s-(n+1)|s^z|s-n>_x is real and
/// positive, the spin image of <n+1|a^dagger|n> > 0.
OperatorMatrix x_basis(const SpinSpace& space);

/// R = exp(i pi (s - s^x)), i.e. (-1)^n on |s-n, s>_x. Spin counterpart of photon parity.
OperatorMatrix spin_x_parity(const SpinSpace& space);

/// exp(i theta s^y) |s, s>_x.
StateVector spin_coherent(const SpinSpace& space, double theta);

/// Coefficients c_n = x<s-n, s|psi> for n = 0..2s, zero-padded to `fock.cutoff()`.
StateVector embed_spin_state(const StateVector& spin_state, const SpinSpace& spin, const FockSpace& fock);

/// Coefficients x<s-n, s|psi> for n = 0..2s.
StateVector to_x_basis(const StateVector& spin_state, const SpinSpace& spin);

}  // namespace kpo
