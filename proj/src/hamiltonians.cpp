#include "kpo/hamiltonians.hpp"

#include <cmath>
#include <sstream>

#include "kpo/groundstate.hpp"

namespace kpo {

AlphaRule parse_alpha_rule(const std::string& text) {
  if (text == "zero" || text == "0") return AlphaRule::zero();
  if (text == "semiclassical" || text == "alpha_c" || text == "ac") return AlphaRule::semiclassical();
  if (text == "semiclassical-nodrive" || text == "alpha_c0" || text == "ac0")
    return AlphaRule::semiclassical_no_drive();
  if (text == "exact") return AlphaRule::exact_photon();
  if (text.rfind("fixed:", 0) == 0) {
    const std::string num = text.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw InvalidArgument("alpha rule: malformed fixed value '" + num + "'");
    return AlphaRule::fixed(v);
  }
  throw InvalidArgument("unknown alpha rule '" + text +
                        "' (expected zero, semiclassical, semiclassical-nodrive, exact or fixed:<value>)");
}

std::string to_string(const AlphaRule& rule) {
  switch (rule.kind) {
    case AlphaRule::Kind::Zero:
      return "zero";
    case AlphaRule::Kind::SemiclassicalWithDrive:
      return "semiclassical";
    case AlphaRule::Kind::SemiclassicalNoDrive:
      return "semiclassical-nodrive";
    case AlphaRule::Kind::ExactPhoton:
      return "exact";
    case AlphaRule::Kind::Fixed: {
      std::ostringstream os;
      os.precision(17);
      os << "fixed:" << rule.value;
      return os.str();
    }
  }
  return "?";
}

double alpha_c(const KpoParams& params) {
  const double gap = params.pump - params.delta;
  if (gap - params.drive < 0.0 || gap <= 0.0) return 0.0;
  return std::sqrt(gap + std::abs(params.drive) / std::sqrt(gap));
}

double alpha_c0(const KpoParams& params) {
  const double gap = params.pump - params.delta;
  return gap >= 0.0 ? std::sqrt(gap) : 0.0;
}

double resolve_alpha(const AlphaRule& rule, const KpoParams& params, const FockSpace& fock) {
  switch (rule.kind) {
    case AlphaRule::Kind::Zero:
      return 0.0;
    case AlphaRule::Kind::SemiclassicalWithDrive:
      return alpha_c(params);
    case AlphaRule::Kind::SemiclassicalNoDrive:
      return alpha_c0(params);
    case AlphaRule::Kind::Fixed:
      return rule.value;
    case AlphaRule::Kind::ExactPhoton: {
      const OperatorMatrix h = build_kpo(fock, params);
      std::optional<OperatorMatrix> sym;
      if (params.drive == 0.0) sym = parity(fock);
      const auto gs = ground_state(h, sym);
      return std::sqrt(std::max(0.0, expval_real(number_op(fock), gs.state)));
    }
  }
  throw InvalidArgument("resolve_alpha: unknown rule");
}

double expansion_denominator(const SpinSpace& space, double alpha) {
  const double denom = 2.0 * space.s() - alpha * alpha;
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "alpha^2 = " << alpha * alpha << " must stay below 2s = " << 2.0 * space.s();
    throw AlphaOutOfRange(os.str());
  }
  return denom;
}

OperatorMatrix build_kpo(const FockSpace& space, const KpoParams& params) {
  const OperatorMatrix a = annihilation(space);
  const OperatorMatrix ad = a.adjoint();
  const OperatorMatrix ad2 = ad * ad;
  const OperatorMatrix a2 = a * a;
  OperatorMatrix h = params.delta * (ad * a);
  h += 0.5 * (ad2 * a2);
  h -= 0.5 * params.pump * (ad2 + a2);
  h -= params.drive * (ad + a);
  return h;
}

OperatorMatrix build_kpo_pair(const FockSpace& space, const PairParams& params) {
  if (params.site1.delta != params.site2.delta || params.site1.pump != params.site2.pump)
    throw InvalidArgument("build_kpo_pair: both sites must share detuning and pump");
  const auto eye = identity(space.dim());
  const OperatorMatrix a = annihilation(space);
  const OperatorMatrix a1 = kron(a, eye);
  const OperatorMatrix a2 = kron(eye, a);
  OperatorMatrix h = kron(build_kpo(space, params.site1), eye);
  h += kron(eye, build_kpo(space, params.site2));
  h -= params.xi0 * params.coupling * (a1.adjoint() * a2 + a1 * a2.adjoint());
  return h;
}

OperatorMatrix build_spin_first(const SpinSpace& space, const KpoParams& kpo, double alpha) {
  const double denom = expansion_denominator(space, alpha);
  const double s = space.s();
  const auto ops = spin_ops(space);
  const OperatorMatrix sz2 = ops.sz * ops.sz;
  OperatorMatrix h = -(2.0 * kpo.pump / denom) * sz2;
  h -= (kpo.delta + kpo.pump + (s - 0.5)) * ops.sx;
  h += 0.5 * (ops.sx * ops.sx);
  h -= (2.0 * kpo.drive / std::sqrt(denom)) * ops.sz;
  return h;
}

OperatorMatrix build_spin_second(const SpinSpace& space, const KpoParams& kpo, double alpha) {
  const double denom = expansion_denominator(space, alpha);
  const double s = space.s();
  const double a2 = alpha * alpha;
  const double root = std::sqrt(denom);
  const double root3 = denom * root;
  const auto ops = spin_ops(space);
  const OperatorMatrix sz2 = ops.sz * ops.sz;

  OperatorMatrix h = -(3.0 / denom - (1.0 + a2) / (denom * denom)) * kpo.pump * sz2;
  h -= (kpo.delta + kpo.pump + (s - 0.5)) * ops.sx;
  h += 0.5 * (ops.sx * ops.sx);
  h -= (5.0 / (2.0 * root) - (1.0 + a2) / (2.0 * root3)) * kpo.drive * ops.sz;
  h += (kpo.drive / (2.0 * root3)) * anticommutator(ops.sx, ops.sz);
  h += (kpo.pump / (denom * denom)) * anticommutator(ops.sx, sz2);
  return h;
}

OperatorMatrix build_spin_second(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp) {
  return build_spin_second(space, kpo, resolve_alpha(sp.alpha_rule, kpo));
}

OperatorMatrix build_spin(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp) {
  const double alpha = resolve_alpha(sp.alpha_rule, kpo);
  return sp.order == ExpansionOrder::Second ? build_spin_second(space, kpo, alpha)
                                            : build_spin_first(space, kpo, alpha);
}

double resolve_pair_alpha(const PairParams& params, const SpinModelParams& sp) {
  if (sp.alpha_rule.kind == AlphaRule::Kind::ExactPhoton)
    throw InvalidArgument("pair models do not support the exact-photon alpha rule");
  const double a1 = resolve_alpha(sp.alpha_rule, params.site1);
  const double a2 = resolve_alpha(sp.alpha_rule, params.site2);
  if (a1 != a2) throw InvalidArgument("pair models need a single alpha; the two sites resolve differently");
  return a1;
}

OperatorMatrix build_spin_pair(const SpinSpace& space, const PairParams& params, const SpinModelParams& sp) {
  if (sp.order != ExpansionOrder::First) throw InvalidArgument("build_spin_pair: only the first-order model exists");
  if (params.site1.delta != params.site2.delta || params.site1.pump != params.site2.pump)
    throw InvalidArgument("build_spin_pair: both sites must share detuning and pump");
  const double alpha = resolve_pair_alpha(params, sp);
  const double denom = expansion_denominator(space, alpha);
  const auto ops = spin_ops(space);
  const auto eye = identity(space.dim());

  OperatorMatrix h = kron(build_spin_first(space, params.site1, alpha), eye);
  h += kron(eye, build_spin_first(space, params.site2, alpha));
  OperatorMatrix coupling = kron(ops.sz, ops.sz);
  if (sp.couple_yy) coupling += kron(ops.sy, ops.sy);
  h -= (2.0 * params.xi0 * params.coupling / denom) * coupling;
  return h;
}

OperatorMatrix build_mf_boson(const FockSpace& space, const KpoParams& kpo, double coupling, double x) {
  const OperatorMatrix a = annihilation(space);
  OperatorMatrix h = build_kpo(space, kpo);
  h -= (coupling * x) * (a.adjoint() + a);
  return h;
}

OperatorMatrix build_mf_spin(const SpinSpace& space, const KpoParams& kpo, const SpinModelParams& sp,
                             double coupling, double mz) {
  const double alpha = resolve_alpha(sp.alpha_rule, kpo);
  const double denom = expansion_denominator(space, alpha);
  OperatorMatrix h = sp.order == ExpansionOrder::Second ? build_spin_second(space, kpo, alpha)
                                                        : build_spin_first(space, kpo, alpha);
  h -= (2.0 * coupling * mz / denom) * spin_ops(space).sz;
  return h;
}

}  // namespace kpo
