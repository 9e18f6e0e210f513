#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kpo/groundstate.hpp"
#include "kpo/hamiltonians.hpp"
#include "kpo/observables.hpp"

using namespace kpo;

TEST_CASE("semiclassical alpha rules") {
  CHECK(alpha_c({1.0, 2.0, 0.0}) == doctest::Approx(1.0));
  CHECK(alpha_c({1.0, 0.5, 0.0}) == 0.0);
  CHECK(alpha_c({0.0, 1.0, 0.1}) == doctest::Approx(std::sqrt(1.1)).epsilon(1e-12));
  // Step boundary p - delta - eps = 0 is included.
  CHECK(alpha_c({0.0, 0.1, 0.1}) == doctest::Approx(std::sqrt(0.1 + 0.1 / std::sqrt(0.1))));
  CHECK(alpha_c({0.0, 0.09, 0.1}) == 0.0);
  // p == delta with a drive would divide by zero.
  CHECK(alpha_c({0.5, 0.5, 0.1}) == 0.0);
  CHECK(alpha_c({0.5, 0.5, -0.1}) == 0.0);
  CHECK(alpha_c({0.5, 0.4, -0.2}) == 0.0);

  CHECK(alpha_c0({0.0, 2.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(alpha_c0({0.4, 0.2, 0.0}) == 0.0);
  CHECK(alpha_c0({0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("alpha rule parsing") {
  CHECK(parse_alpha_rule("zero").kind == AlphaRule::Kind::Zero);
  CHECK(parse_alpha_rule("semiclassical").kind == AlphaRule::Kind::SemiclassicalWithDrive);
  CHECK(parse_alpha_rule("semiclassical-nodrive").kind == AlphaRule::Kind::SemiclassicalNoDrive);
  CHECK(parse_alpha_rule("exact").kind == AlphaRule::Kind::ExactPhoton);
  const auto fixed = parse_alpha_rule("fixed:0.75");
  CHECK(fixed.kind == AlphaRule::Kind::Fixed);
  CHECK(fixed.value == 0.75);
  CHECK(parse_alpha_rule(to_string(fixed)).value == 0.75);
  CHECK_THROWS_AS(parse_alpha_rule("fixed:abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_alpha_rule("semi"), InvalidArgument);
}

TEST_CASE("bosonic oscillator") {
  const FockSpace fock(20);
  SUBCASE("undriven detuned oscillator sits in the vacuum") {
    const auto gs = ground_state(build_kpo(fock, {1.0, 0.0, 0.0}));
    CHECK(gs.energy == doctest::Approx(0.0));
    CHECK(std::abs(std::abs(gs.state(0)) - 1.0) <= 1e-12);
  }
  SUBCASE("cat energy equals -p^2/2") {
    const FockSpace big(30);
    const auto gs = ground_state(build_kpo(big, {0.0, 2.0, 0.0}), parity(big));
    CHECK(std::abs(gs.energy + 2.0) <= 1e-4);
  }
  SUBCASE("photon number at delta=1, p=2") {
    // Frozen from an independent numpy dense diagonalization (cutoff 20 and 30 agree).
    const auto gs = ground_state(build_kpo(fock, {1.0, 2.0, 0.0}), parity(fock));
    CHECK(std::abs(photon_number(gs.state, fock) - 0.6095398467920996) <= 1e-9);
  }
  SUBCASE("hermitian and parity symmetric without drive") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int i = 0; i < 10; ++i) {
      const KpoParams params{u(rng), u(rng), 0.0};
      const OperatorMatrix h = build_kpo(fock, params);
      CHECK(is_hermitian(h, 1e-12));
      CHECK(max_abs(commutator(h, parity(fock))) <= 1e-12);
    }
    CHECK(max_abs(commutator(build_kpo(fock, {0.0, 1.0, 0.2}), parity(fock))) > 0.1);
  }
}

TEST_CASE("pair of oscillators") {
  const FockSpace fock(6);
  SUBCASE("decoupled spectrum is the sum of single-site spectra") {
    PairParams pp{{0.3, 0.7, 0.1}, {0.3, 0.7, -0.2}, 0.0, 1.0};
    const auto e = herm_eig(build_kpo_pair(fock, pp)).eigenvalues;
    const auto e1 = herm_eig(build_kpo(fock, pp.site1)).eigenvalues;
    const auto e2 = herm_eig(build_kpo(fock, pp.site2)).eigenvalues;
    std::vector<double> sums;
    for (Eigen::Index i = 0; i < e1.size(); ++i)
      for (Eigen::Index j = 0; j < e2.size(); ++j) sums.push_back(e1(i) + e2(j));
    std::sort(sums.begin(), sums.end());
    for (std::size_t k = 0; k < sums.size(); ++k) CHECK(std::abs(e(static_cast<Eigen::Index>(k)) - sums[k]) <= 1e-10);
  }
  SUBCASE("hermitian, swap symmetric, and coupling sign") {
    PairParams pp{{0.0, 0.5, 0.1}, {0.0, 0.5, 0.1}, 0.08, 1.0};
    const OperatorMatrix h = build_kpo_pair(fock, pp);
    CHECK(is_hermitian(h, 1e-12));
    OperatorMatrix swap = OperatorMatrix::Zero(36, 36);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) swap(j * 6 + i, i * 6 + j) = 1.0;
    CHECK(max_abs(swap * h * swap - h) <= 1e-12);
    // <1,0| H |0,1> = -J
    CHECK(std::abs(h(1 * 6 + 0, 0 * 6 + 1) + 0.08) <= 1e-14);
  }
  SUBCASE("frustrated drives give anti-correlated quadratures at small pump") {
    const FockSpace f12(12);
    PairParams pp{{0.0, 0.0, 0.1}, {0.0, 0.0, -0.1}, 0.08, 1.0};
    const auto gs = ground_state(build_kpo_pair(f12, pp));
    const double cb = correlation_boson(gs.state, f12);
    CHECK(cb < 0.0);
    std::swap(pp.site1.drive, pp.site2.drive);
    const auto swapped = ground_state(build_kpo_pair(f12, pp));
    CHECK(std::abs(correlation_boson(swapped.state, f12) - cb) <= 1e-10);
  }
  SUBCASE("mismatched shared parameters are rejected") {
    PairParams pp{{0.0, 0.5, 0.1}, {0.1, 0.5, 0.1}, 0.08, 1.0};
    CHECK_THROWS_AS(build_kpo_pair(fock, pp), InvalidArgument);
  }
}

TEST_CASE("first-order spin model") {
  SUBCASE("coefficients at s=1, alpha=0, (1,2,0)") {
    const SpinSpace one(1.0);
    const auto ops = spin_ops(one);
    const OperatorMatrix expected = -2.0 * ops.sz * ops.sz - 3.5 * ops.sx + 0.5 * ops.sx * ops.sx;
    CHECK(max_abs(build_spin(one, {1.0, 2.0, 0.0}, {}) - expected) <= 1e-14);
  }
  SUBCASE("coefficient audit against an independent four-term sum") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    const std::vector<double> spins{1.0, 1.5, 2.0, 4.0, 10.0};
    for (int draw = 0; draw < 20; ++draw) {
      const double s = spins[static_cast<std::size_t>(draw) % spins.size()];
      const SpinSpace space(s);
      const KpoParams kpo{u(rng), u(rng), u(rng) * 0.2};
      const double alpha = std::abs(u(rng)) * 0.5;
      const auto ops = spin_ops(space);
      const double d = 2.0 * s - alpha * alpha;
      OperatorMatrix expected = OperatorMatrix::Zero(space.dim(), space.dim());
      expected += (-2.0 * kpo.pump / d) * (ops.sz * ops.sz);
      expected += -(kpo.delta + kpo.pump + s - 0.5) * ops.sx;
      expected += 0.5 * (ops.sx * ops.sx);
      expected += (-2.0 * kpo.drive / std::sqrt(d)) * ops.sz;
      CHECK(max_abs(build_spin(space, kpo, {AlphaRule::fixed(alpha)}) - expected) <= 1e-12);
    }
  }
  SUBCASE("no pump: ground state is |s,s>_x") {
    for (double s : {1.0, 2.0, 4.0, 10.0}) {
      const SpinSpace space(s);
      const auto gs = ground_state(build_spin(space, {1.0, 0.0, 0.0}, {}));
      CHECK(std::abs(f_sp(gs.state, space)) <= 1e-12);
      CHECK(std::abs(std::abs(x_basis(space).col(0).dot(gs.state)) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("x-rotation symmetry without drive") {
    for (double s : {1.0, 2.0, 4.0, 10.0}) {
      const SpinSpace space(s);
      const OperatorMatrix h = build_spin(space, {1.0, 1.3, 0.0}, {AlphaRule::semiclassical()});
      CHECK(is_hermitian(h, 1e-12));
      CHECK(max_abs(commutator(h, spin_x_parity(space))) <= 1e-10);
    }
  }
  SUBCASE("alpha must stay below sqrt(2s)") {
    CHECK_THROWS_AS(build_spin(SpinSpace(1.0), {0.0, 2.0, 0.1}, {AlphaRule::semiclassical()}), AlphaOutOfRange);
    CHECK_THROWS_AS(build_spin(SpinSpace(1.0), {}, {AlphaRule::fixed(std::sqrt(2.0))}), AlphaOutOfRange);
  }
  SUBCASE("exact-photon rule uses the bosonic ground state") {
    const KpoParams kpo{1.0, 2.0, 0.0};
    CHECK(resolve_alpha(AlphaRule::exact_photon(), kpo) == doctest::Approx(std::sqrt(0.6095398467920996)));
  }
}

TEST_CASE("second-order spin model") {
  SUBCASE("reduces to the first-order model without pump and drive") {
    for (double s : {1.0, 2.0, 10.0}) {
      const SpinSpace space(s);
      for (double alpha : {0.0, 0.8}) {
        const KpoParams kpo{0.7, 0.0, 0.0};
        CHECK(max_abs(build_spin_second(space, kpo, alpha) - build_spin_first(space, kpo, alpha)) <= 1e-13);
      }
    }
  }
  SUBCASE("hermitian for random parameters") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int draw = 0; draw < 20; ++draw) {
      const SpinSpace space(static_cast<double>(1 + draw % 10));
      const OperatorMatrix h = build_spin_second(space, {u(rng), u(rng), u(rng)}, std::abs(u(rng)) * 0.5);
      CHECK(max_abs(h - h.adjoint()) <= 1e-12);
    }
  }
  SUBCASE("explicit correction terms") {
    const SpinSpace space(4.0);
    const KpoParams kpo{0.3, 1.1, 0.2};
    const double alpha = 0.9;
    const double d = 8.0 - alpha * alpha;
    const auto ops = spin_ops(space);
    const OperatorMatrix sz2 = ops.sz * ops.sz;
    const OperatorMatrix diff = build_spin_second(space, kpo, alpha) - build_spin_first(space, kpo, alpha);
    const OperatorMatrix expected =
        -(1.0 / d - (1.0 + alpha * alpha) / (d * d)) * kpo.pump * sz2 -
        (1.0 / (2.0 * std::sqrt(d)) - (1.0 + alpha * alpha) / (2.0 * std::pow(d, 1.5))) * kpo.drive * ops.sz +
        kpo.drive / (2.0 * std::pow(d, 1.5)) * (ops.sx * ops.sz + ops.sz * ops.sx) +
        kpo.pump / (d * d) * (ops.sx * sz2 + sz2 * ops.sx);
    CHECK(max_abs(diff - expected) <= 1e-12);
  }
  SUBCASE("build_spin dispatches on the order") {
    const SpinSpace space(2.0);
    const KpoParams kpo{1.0, 1.0, 0.0};
    SpinModelParams sp{AlphaRule::semiclassical(), ExpansionOrder::Second, true};
    CHECK(max_abs(build_spin(space, kpo, sp) - build_spin_second(space, kpo, sp)) == 0.0);
  }
}

TEST_CASE("spin pair") {
  const SpinSpace space(2.0);
  SUBCASE("decoupled") {
    PairParams pp{{0.0, 0.5, 0.1}, {0.0, 0.5, -0.1}, 0.0, 1.0};
    const SpinModelParams sp{AlphaRule::semiclassical_no_drive()};
    const auto eye = identity(space.dim());
    const OperatorMatrix h1 = build_spin(space, pp.site1, sp);
    const OperatorMatrix h2 = build_spin(space, pp.site2, sp);
    CHECK(max_abs(build_spin_pair(space, pp, sp) - (kron(h1, eye) + kron(eye, h2))) <= 1e-13);
  }
  SUBCASE("yy toggle") {
    PairParams pp{{0.0, 0.5, 0.1}, {0.0, 0.5, -0.1}, 0.12, 1.0};
    SpinModelParams full{AlphaRule::semiclassical_no_drive(), ExpansionOrder::First, true};
    SpinModelParams zz = full;
    zz.couple_yy = false;
    const auto ops = spin_ops(space);
    const double d = 4.0 - 0.5;
    const OperatorMatrix diff = build_spin_pair(space, pp, zz) - build_spin_pair(space, pp, full);
    CHECK(max_abs(diff - (2.0 * 0.12 / d) * kron(ops.sy, ops.sy)) <= 1e-13);
    CHECK(is_hermitian(build_spin_pair(space, pp, full), 1e-12));
  }
  SUBCASE("unsupported combinations") {
    PairParams pp{{0.0, 0.5, 0.1}, {0.0, 0.5, -0.1}, 0.12, 1.0};
    CHECK_THROWS_AS(build_spin_pair(space, pp, {AlphaRule::zero(), ExpansionOrder::Second, true}), InvalidArgument);
    CHECK_THROWS_AS(build_spin_pair(space, pp, {AlphaRule::exact_photon()}), InvalidArgument);
    PairParams asym{{0.0, 1.0, 0.3}, {0.0, 1.0, 0.1}, 0.12, 1.0};
    CHECK_THROWS_AS(build_spin_pair(space, asym, {AlphaRule::semiclassical()}), InvalidArgument);
  }
}

TEST_CASE("mean-field Hamiltonians") {
  const FockSpace fock(20);
  const KpoParams kpo{0.4, 0.6, 0.05};
  CHECK(max_abs(build_mf_boson(fock, kpo, 0.2, 0.0) - build_kpo(fock, kpo)) == 0.0);
  KpoParams shifted = kpo;
  shifted.drive += 0.2 * 0.5;
  CHECK(max_abs(build_mf_boson(fock, kpo, 0.2, 0.5) - build_kpo(fock, shifted)) <= 1e-14);

  const KpoParams sym{0.4, 0.6, 0.0};
  const OperatorMatrix h = build_mf_boson(fock, sym, 0.2, 0.5);
  CHECK(is_hermitian(h, 1e-12));
  const auto gs = ground_state(h);
  CHECK(gs.gap > 1e-3);

  const SpinSpace space(4.0);
  const SpinModelParams sp{AlphaRule::semiclassical_no_drive()};
  CHECK(max_abs(build_mf_spin(space, kpo, sp, 0.2, 0.0) - build_spin(space, kpo, sp)) == 0.0);
  const double alpha = alpha_c0(kpo);
  const double mz = 1.3;
  KpoParams eff = kpo;
  eff.drive += 0.2 * mz / std::sqrt(8.0 - alpha * alpha);
  CHECK(max_abs(build_mf_spin(space, kpo, sp, 0.2, mz) - build_spin(space, eff, sp)) <= 1e-13);
}
