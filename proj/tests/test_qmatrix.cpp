#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpo/qmatrix.hpp"
#include "kpo/spaces.hpp"
#include "test_support.hpp"

using namespace kpo;

TEST_CASE("kron of small diagonal matrices") {
  const OperatorMatrix i2 = identity(2);
  CHECK(max_abs(kron(i2, i2) - identity(4)) == 0.0);

  OperatorMatrix d12 = OperatorMatrix::Zero(2, 2);
  d12.diagonal() << 1.0, 2.0;
  OperatorMatrix expected = OperatorMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 1.0, 2.0, 2.0;
  CHECK(max_abs(kron(d12, i2) - expected) == 0.0);

  OperatorMatrix z = OperatorMatrix::Zero(2, 2);
  z.diagonal() << 1.0, -1.0;
  expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
  CHECK(max_abs(kron(z, z) - expected) == 0.0);
}

TEST_CASE("kron index layout and associativity") {
  std::mt19937_64 rng(7);
  const auto a = testing::random_matrix(2, rng);
  const auto b = testing::random_matrix(3, rng);
  const auto c = testing::random_matrix(2, rng);
  const OperatorMatrix ab = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(ab(i * 3 + k, j * 3 + l) == a(i, j) * b(k, l));

  for (int trial = 0; trial < 5; ++trial) {
    const auto x = testing::random_matrix(2, rng);
    const auto y = testing::random_matrix(3, rng);
    const auto w = testing::random_matrix(2, rng);
    CHECK(max_abs(kron(kron(x, y), w) - kron(x, kron(y, w))) <= 1e-12);
  }
  CHECK(max_abs(kron(ab, c) - kron(a, kron(b, c))) <= 1e-12);
}

TEST_CASE("kron rejects results beyond the dimension limit") {
  const OperatorMatrix big = identity(65);
  CHECK_THROWS_AS(kron(big, big), DimensionOverflow);
}

TEST_CASE("herm_eig on analytic cases") {
  OperatorMatrix d = OperatorMatrix::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const auto eig = herm_eig(d);
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(eig.eigenvalues(2) == doctest::Approx(3.0));

  OperatorMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const auto e2 = herm_eig(sx);
  CHECK(e2.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e2.eigenvalues(1) == doctest::Approx(1.0));
  const double r = 1.0 / std::numbers::sqrt2;
  // Up to phase: (1, -1)/sqrt2 and (1, 1)/sqrt2.
  CHECK(std::abs(std::abs(e2.eigenvectors.col(0).dot(StateVector{{r, -r}})) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(e2.eigenvectors.col(1).dot(StateVector{{r, r}})) - 1.0) < 1e-12);
}

TEST_CASE("herm_eig reconstruction and invariants on a random 50x50 Hermitian matrix") {
  std::mt19937_64 rng(2024);
  const auto a = testing::random_hermitian(50, rng);
  const auto eig = herm_eig(a);
  const OperatorMatrix& v = eig.eigenvectors;
  const OperatorMatrix rebuilt = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
  CHECK(max_abs(rebuilt - a) <= 1e-9);
  CHECK(max_abs(v.adjoint() * v - identity(50)) <= 1e-12);
  for (Eigen::Index k = 1; k < 50; ++k) CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
  const double fro = a.norm();
  for (Eigen::Index k = 0; k < 50; ++k)
    CHECK((a * v.col(k) - eig.eigenvalues(k) * v.col(k)).norm() <= 1e-10 * fro);
  CHECK(std::abs(eig.eigenvalues.sum() - a.trace().real()) <= 1e-9 * fro);

  const auto again = herm_eig(a);
  CHECK(max_abs(again.eigenvectors - eig.eigenvectors) == 0.0);
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  OperatorMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(herm_eig(m), NotHermitian);
  CHECK_THROWS_AS(herm_eig(OperatorMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("unitary_exp") {
  CHECK(max_abs(unitary_exp(OperatorMatrix::Zero(3, 3)) - identity(3)) <= 1e-14);

  OperatorMatrix g = OperatorMatrix::Zero(2, 2);
  g(1, 1) = Complex(0.0, std::numbers::pi);
  OperatorMatrix expected = OperatorMatrix::Zero(2, 2);
  expected.diagonal() << 1.0, -1.0;
  CHECK(max_abs(unitary_exp(g) - expected) <= 1e-12);

  OperatorMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const OperatorMatrix quarter = (std::numbers::pi / 2.0) * rot;
  const OperatorMatrix u = unitary_exp(quarter);
  CHECK(max_abs(u - rot) <= 1e-12);
  CHECK(max_abs(u * unitary_exp(OperatorMatrix(-quarter)) - identity(2)) <= 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const OperatorMatrix h = testing::random_hermitian(12, rng);
    const OperatorMatrix w = unitary_exp(OperatorMatrix(Complex(0.0, 1.0) * h));
    CHECK(max_abs(w.adjoint() * w - identity(12)) <= 1e-9);
  }

  CHECK_THROWS_AS(unitary_exp(identity(2)), NotAntiHermitian);
}

TEST_CASE("expval") {
  std::mt19937_64 rng(11);
  const auto psi = testing::random_state(6, rng);
  CHECK(std::abs(expval(identity(6), psi) - 1.0) <= 1e-12);

  const FockSpace fock(5);
  CHECK(expval_real(number_op(fock), fock_state(fock, 3)) == doctest::Approx(3.0));

  // (a^dag + a)/2 on a real coherent state gives alpha.
  const FockSpace big(30);
  const OperatorMatrix a = annihilation(big);
  CHECK(std::abs(expval_real((a.adjoint() + a) / 2.0, coherent_state(big, 1.0)) - 1.0) <= 1e-6);

  const auto h = testing::random_hermitian(6, rng);
  CHECK(std::abs(expval(h, psi).imag()) <= 1e-12);

  CHECK_THROWS_AS(expval(identity(5), psi), DimensionMismatch);
  CHECK_THROWS_AS(expval(identity(6), StateVector(2.0 * psi)), InvalidArgument);
}
