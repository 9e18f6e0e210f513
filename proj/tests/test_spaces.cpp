#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpo/spaces.hpp"

using namespace kpo;

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

TEST_CASE("annihilation operator elements") {
  const OperatorMatrix a2 = annihilation(FockSpace(2));
  CHECK(a2(0, 1) == Complex(1.0));
  CHECK(a2(0, 0) == Complex(0.0));
  CHECK(a2(1, 0) == Complex(0.0));
  CHECK(a2(1, 1) == Complex(0.0));
  CHECK(annihilation(FockSpace(3))(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("truncated commutator is identity except the top corner") {
  for (int cutoff : {2, 5, 20}) {
    const FockSpace fock(cutoff);
    const OperatorMatrix a = annihilation(fock);
    OperatorMatrix expected = identity(cutoff);
    expected(cutoff - 1, cutoff - 1) = 1.0 - cutoff;
    CHECK(max_abs(commutator(a, a.adjoint()) - expected) <= 1e-12);
  }
}

TEST_CASE("FockSpace validation") {
  CHECK_THROWS_AS(FockSpace(1), InvalidArgument);
  CHECK(FockSpace().cutoff() == 20);
}

TEST_CASE("parity operator") {
  const FockSpace fock(3);
  const OperatorMatrix p = parity(fock);
  CHECK(p(0, 0) == Complex(1.0));
  CHECK(p(1, 1) == Complex(-1.0));
  CHECK(p(2, 2) == Complex(1.0));
  const FockSpace f8(8);
  const OperatorMatrix p8 = parity(f8);
  const OperatorMatrix a = annihilation(f8);
  CHECK(max_abs(p8 * p8 - identity(8)) == 0.0);
  CHECK(max_abs(p8 * a * p8 + a) == 0.0);
  CHECK(max_abs(commutator(p8, number_op(f8))) == 0.0);
}

TEST_CASE("coherent states") {
  const FockSpace fock(30);
  const StateVector vac = coherent_state(fock, 0.0);
  CHECK(std::abs(vac(0) - 1.0) < 1e-15);
  CHECK(vac.tail(29).norm() == 0.0);

  const StateVector one = coherent_state(fock, 1.0);
  CHECK(std::abs(expval_real(number_op(fock), one) - 1.0) <= 1e-8);

  const StateVector minus = coherent_state(fock, -1.0);
  CHECK(std::abs(one.dot(minus).real() - std::exp(-2.0)) <= 1e-6);
}

TEST_CASE("spin matrices for small s") {
  const auto half = spin_ops(SpinSpace(0.5));
  OperatorMatrix px(2, 2), py(2, 2), pz(2, 2);
  px << 0.0, 1.0, 1.0, 0.0;
  py << 0.0, -kI, kI, 0.0;
  pz << 1.0, 0.0, 0.0, -1.0;
  CHECK(max_abs(half.sx - px / 2.0) <= 1e-15);
  CHECK(max_abs(half.sy - py / 2.0) <= 1e-15);
  CHECK(max_abs(half.sz - pz / 2.0) <= 1e-15);

  const auto one = spin_ops(SpinSpace(1.0));
  CHECK(one.sz(0, 0) == Complex(1.0));
  CHECK(one.sz(1, 1) == Complex(0.0));
  CHECK(one.sz(2, 2) == Complex(-1.0));

  CHECK_THROWS_AS(SpinSpace(0.3), InvalidArgument);
  CHECK_THROWS_AS(SpinSpace(0.0), InvalidArgument);
}

TEST_CASE("spin algebra: commutators and Casimir") {
  for (double s : {0.5, 1.0, 1.5, 2.0, 4.0, 10.0}) {
    CAPTURE(s);
    const SpinSpace space(s);
    const auto [sx, sy, sz] = spin_ops(space);
    CHECK(is_hermitian(sx, 0.0));
    CHECK(is_hermitian(sy, 0.0));
    CHECK(max_abs(commutator(sx, sy) - kI * sz) <= 1e-12);
    CHECK(max_abs(commutator(sy, sz) - kI * sx) <= 1e-12);
    CHECK(max_abs(commutator(sz, sx) - kI * sy) <= 1e-12);
    const OperatorMatrix casimir = sx * sx + sy * sy + sz * sz;
    CHECK(max_abs(casimir - s * (s + 1.0) * identity(space.dim())) <= 1e-10);
  }
}

TEST_CASE("x basis diagonalizes s^x in descending order with positive s^z ladder") {
  for (double s : {0.5, 1.0, 2.0, 4.0, 10.0}) {
    CAPTURE(s);
    const SpinSpace space(s);
    const auto ops = spin_ops(space);
    const OperatorMatrix u = x_basis(space);
    CHECK(max_abs(u.adjoint() * u - identity(space.dim())) <= 1e-12);

    const OperatorMatrix sx_x = u.adjoint() * ops.sx * u;
    OperatorMatrix expected = OperatorMatrix::Zero(space.dim(), space.dim());
    for (Eigen::Index n = 0; n < space.dim(); ++n) expected(n, n) = s - static_cast<double>(n);
    CHECK(max_abs(sx_x - expected) <= 1e-12);

    // Independent ladder oracle: <m-1|s^z|m> in the x basis is
    // (1/2) sqrt(s(s+1) - m(m-1)) with m = s - n.
    const OperatorMatrix sz_x = u.adjoint() * ops.sz * u;
    for (Eigen::Index n = 0; n + 1 < space.dim(); ++n) {
      const double m = s - static_cast<double>(n);
      const double ladder = 0.5 * std::sqrt(s * (s + 1.0) - m * (m - 1.0));
      CHECK(std::abs(sz_x(n + 1, n) - ladder) <= 1e-12);
    }
    CHECK(std::abs(expval_real(ops.sx, StateVector(u.col(0))) - s) <= 1e-12);
  }
  const OperatorMatrix u2 = x_basis(SpinSpace(2.0));
  const OperatorMatrix sz2 = spin_ops(SpinSpace(2.0)).sz;
  CHECK(std::abs(u2.col(1).dot(sz2 * u2.col(0)) - 1.0) <= 1e-12);
}

TEST_CASE("x basis for spin one half") {
  const OperatorMatrix u = x_basis(SpinSpace(0.5));
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(u(0, 0) - r) <= 1e-12);
  CHECK(std::abs(u(1, 0) - r) <= 1e-12);
  CHECK(std::abs(u(0, 1) - r) <= 1e-12);
  CHECK(std::abs(u(1, 1) + r) <= 1e-12);
}

TEST_CASE("spin x parity mirrors photon parity") {
  for (double s : {1.0, 2.0, 10.0}) {
    const SpinSpace space(s);
    const auto ops = spin_ops(space);
    const OperatorMatrix r = spin_x_parity(space);
    CHECK(max_abs(r * r - identity(space.dim())) <= 1e-12);
    CHECK(max_abs(r * ops.sz * r + ops.sz) <= 1e-12);
    CHECK(max_abs(commutator(r, ops.sx)) <= 1e-12);
    // Agrees with exp(i pi (s - s^x)).
    const OperatorMatrix gen = Complex(0.0, std::numbers::pi) * (s * identity(space.dim()) - ops.sx);
    CHECK(max_abs(unitary_exp(gen) - r) <= 1e-9);
  }
}

TEST_CASE("spin coherent states") {
  const SpinSpace one(1.0);
  CHECK((spin_coherent(one, 0.0) - x_basis(one).col(0)).norm() <= 1e-14);
  const auto flipped = spin_coherent(one, std::numbers::pi);
  CHECK(std::abs(expval_real(spin_ops(one).sx, flipped) + 1.0) <= 1e-10);
  CHECK(std::abs(flipped.norm() - 1.0) <= 1e-12);

  // Large-s image of the coherent state |alpha = 1>.
  const SpinSpace ten(10.0);
  const FockSpace fock(21);
  const StateVector spin_state = spin_coherent(ten, std::sqrt(2.0 / 10.0));
  const StateVector embedded = embed_spin_state(spin_state, ten, fock);
  const double ov = std::abs(coherent_state(fock, 1.0).dot(embedded));
  CHECK(ov >= 0.99);
}

TEST_CASE("embedding requires room for 2s+1 levels") {
  const SpinSpace ten(10.0);
  const StateVector psi = x_basis(ten).col(0);
  CHECK_THROWS_AS(embed_spin_state(psi, ten, FockSpace(20)), CutoffTooSmall);
  const StateVector emb = embed_spin_state(psi, ten, FockSpace(25));
  CHECK(std::abs(emb(0) - 1.0) <= 1e-12);
  CHECK(emb.tail(24).norm() <= 1e-12);
}
