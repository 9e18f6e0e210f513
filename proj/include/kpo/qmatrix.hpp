#pragma once

// Dense complex-matrix core. Everything here is a free function over Eigen
// expressions; operators, Hamiltonians and density matrices are all plain
// Eigen matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <type_traits>

#include "kpo/errors.hpp"

namespace kpo {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using OperatorMatrix = Matrix<Complex>;
using StateVector = Vector<Complex>;
using RealVector = Vector<double>;

inline constexpr Eigen::Index kMaxDim = 4096;
inline constexpr double kHermitianTol = 1e-10;

template <typename Scalar>
struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix<Scalar> eigenvectors;
};

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionMismatch(os.str());
  }
}

// Fix the arbitrary phase of each eigenvector: the first component of largest
// magnitude is made real and positive. Gives reproducible states across runs.
template <typename Derived>
void normalize_phases(Eigen::MatrixBase<Derived>& vecs) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
      const double m = std::abs(vecs(i, k));
      if (m > best * (1.0 + 1e-12) + 1e-300) {
        best = m;
        imax = i;
      }
    }
    const Scalar pivot = vecs(imax, k);
    if (best > 0.0) vecs.col(k) *= std::abs(pivot) / pivot;
  }
}

}  // namespace detail

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// max|A - A^dagger| <= tol, elementwise.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kHermitianTol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

template <typename Derived>
bool is_anti_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kHermitianTol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a + a.adjoint()) <= tol;
}

template <typename DA, typename DB>
auto commutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  Matrix<S> ab = a * b;
  ab.noalias() -= b * a;
  return ab;
}

template <typename DA, typename DB>
auto anticommutator(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  Matrix<S> ab = a * b;
  ab.noalias() += b * a;
  return ab;
}

/// Kronecker product, (a (x) b)[i*nb + k, j*nb + l] = a[i,j] * b[k,l].
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    std::ostringstream os;
    os << "kron: result dimension " << rows << "x" << cols << " exceeds limit " << kMaxDim;
    throw DimensionOverflow(os.str());
  }
  Matrix<S> out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = S(a(i, j)) * b.template cast<S>();
  return out;
}

template <typename Scalar = Complex>
Matrix<Scalar> identity(Eigen::Index dim) {
  return Matrix<Scalar>::Identity(dim, dim);
}

/// Hermitian eigendecomposition with ascending eigenvalues. A complex input
/// whose imaginary part vanishes identically is diagonalized with the real
/// symmetric solver; the result is the same up to eigenvector phase, which is
/// normalized afterwards anyway.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> herm_eig(const Eigen::MatrixBase<Derived>& a,
                                                       double tol = kHermitianTol) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "herm_eig");
  if (!is_hermitian(a, tol)) {
    std::ostringstream os;
    os << "herm_eig: matrix is not Hermitian (max|A-A^dagger| = " << max_abs(a - a.adjoint()) << ")";
    throw NotHermitian(os.str());
  }
  EigenDecomposition<Scalar> out;
  if constexpr (detail::is_complex<Scalar>::value) {
    if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
      auto real = herm_eig(Matrix<double>(a.real()), tol);
      out.eigenvalues = std::move(real.eigenvalues);
      out.eigenvectors = real.eigenvectors.template cast<Scalar>();
      return out;
    }
  }
  // Symmetrize so that round-off below tol never leaks into the solver.
  const Matrix<Scalar> h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(h);
  if (solver.info() != Eigen::Success) throw NoConvergence("herm_eig: eigensolver did not converge");
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  detail::normalize_phases(out.eigenvectors);
  return out;
}

/// exp(g) for anti-Hermitian g, via the spectral decomposition of i*g.
template <typename Derived>
OperatorMatrix unitary_exp(const Eigen::MatrixBase<Derived>& g) {
  detail::require_square(g, "unitary_exp");
  const OperatorMatrix gc = g.template cast<Complex>();
  if (!is_anti_hermitian(gc)) {
    std::ostringstream os;
    os << "unitary_exp: generator is not anti-Hermitian (max|G+G^dagger| = " << max_abs(gc + gc.adjoint())
       << ")";
    throw NotAntiHermitian(os.str());
  }
  const OperatorMatrix h = Complex(0.0, 1.0) * gc;  // Hermitian; g = -i h
  const auto eig = herm_eig(h);
  const StateVector phases = (Complex(0.0, -1.0) * eig.eigenvalues.cast<Complex>()).array().exp().matrix();
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

/// <state| op |state> for a normalized state.
template <typename DOp, typename DVec>
Complex expval(const Eigen::MatrixBase<DOp>& op, const Eigen::MatrixBase<DVec>& state) {
  if (op.rows() != op.cols() || op.cols() != state.size()) {
    std::ostringstream os;
    os << "expval: operator " << op.rows() << "x" << op.cols() << " vs state of length " << state.size();
    throw DimensionMismatch(os.str());
  }
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "expval: state is not normalized (norm = " << norm << ")";
    throw InvalidArgument(os.str());
  }
  const StateVector psi = state.template cast<Complex>();
  return psi.dot(op.template cast<Complex>() * psi);
}

/// Real part of expval for operators known to be Hermitian.
template <typename DOp, typename DVec>
double expval_real(const Eigen::MatrixBase<DOp>& op, const Eigen::MatrixBase<DVec>& state) {
  return expval(op, state).real();
}

}  // namespace kpo
