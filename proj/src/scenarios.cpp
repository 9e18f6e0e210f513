#include "kpo/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "kpo/groundstate.hpp"
#include "kpo/hamiltonians.hpp"
#include "kpo/log.hpp"
#include "kpo/meanfield.hpp"
#include "kpo/parallel.hpp"

namespace kpo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const ParamList kSweepGrid{{"p_min", "0"}, {"p_max", "2"}, {"p_step", "0.01"}};

ParamList with_grid(ParamList head, const ParamList& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::vector<ScenarioInfo> make_catalog() {
  std::vector<ScenarioInfo> c;
  c.push_back({ScenarioId::PhotonSweep, "photon-sweep",
               "photon number of one oscillator vs pump, with s - <s^x> of the spin models",
               with_grid({{"cutoff", "20"}, {"delta", "1"}, {"drive", "0"}},
                         with_grid(kSweepGrid, {{"spins", "1,2,4,10"}, {"alpha_rules", "zero,semiclassical,exact"}}))});
  c.push_back({ScenarioId::WignerPanel, "wigner-panel",
               "Wigner functions of the oscillator and spin ground states at one operating point",
               {{"cutoff", "20"},
                {"delta", "1"},
                {"pump", "2"},
                {"drive", "0"},
                {"panels", "boson,zero:1,zero:4,zero:10,semiclassical:1,semiclassical:4,semiclassical:10"},
                {"half_width", "4"},
                {"points", "161"}}});
  c.push_back({ScenarioId::OverlapVsS, "overlap-vs-s", "overlap of oscillator and spin ground states vs s",
               {{"cutoff", "20"},
                {"delta", "1"},
                {"pump", "2"},
                {"drive", "0"},
                {"spins", "1,2,4,10"},
                {"alpha_rules", "zero,semiclassical"}}});
  c.push_back({ScenarioId::QuadratureSweep, "quadrature-sweep",
               "quadrature amplitude vs pump under a coherent drive, with the spin counterparts",
               with_grid({{"cutoff", "20"}, {"delta", "0"}, {"drive", "0.1"}},
                         with_grid(kSweepGrid, {{"spins", "1,2,4,10"}, {"alpha_rules", "zero,semiclassical,exact"}}))});
  c.push_back({ScenarioId::SecondOrderSweep, "second-order-sweep",
               "first- and second-order spin models against photon number and quadrature",
               with_grid({{"cutoff", "20"}, {"delta_sp", "1"}, {"drive_sp", "0"}, {"delta_sq", "0"}, {"drive_sq", "0.1"}},
                         with_grid(kSweepGrid, {{"spins", "1,2,4,10"}, {"alpha_rule", "semiclassical"}}))});
  c.push_back({ScenarioId::PairCorrelation, "pair-correlation",
               "quadrature correlation of two coupled oscillators with opposite drives, and of spin pairs",
               with_grid({{"cutoff", "20"},
                          {"delta", "0"},
                          {"drive1", "0.1"},
                          {"drive2", "-0.1"},
                          {"coupling", "0.08"},
                          {"xi0", "1"}},
                         with_grid(kSweepGrid, {{"spins", "1,2,4,10"}, {"alpha_rule", "semiclassical-nodrive"}}))});
  c.push_back({ScenarioId::MfCurve, "mf-curve", "mean-field order parameter vs pump",
               with_grid({{"cutoff", "20"}, {"delta", "0.4"}, {"drive", "0"}, {"coupling", "0.2"}},
                         with_grid(kSweepGrid, {{"spins", "1,2,4,10"},
                                                {"alpha_rule", "semiclassical-nodrive"},
                                                {"tol", "1e-10"},
                                                {"damping", "0.5"},
                                                {"seed", "1e-3"},
                                                {"max_iter", "500"}}))});
  c.push_back({ScenarioId::PhaseDiagram, "phase-diagram", "mean-field critical pump vs detuning",
               {{"cutoff", "20"},
                {"delta_min", "0"},
                {"delta_max", "0.6"},
                {"delta_step", "0.02"},
                {"drive", "0"},
                {"coupling", "0.2"},
                {"p_min", "0"},
                {"p_max", "2"},
                {"coarse_step", "0.02"},
                {"bracket_width", "1e-4"},
                {"onset_tol", "1e-4"},
                {"spins", "1,2,4,10"},
                {"alpha_rule", "semiclassical-nodrive"},
                {"tol", "1e-10"},
                {"damping", "0.5"},
                {"seed", "1e-3"},
                {"max_iter", "500"}}});
  return c;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    const auto piece = trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw InvalidArgument("parameter '" + key + "': '" + text + "' is not a finite number");
  return v;
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string spin_label(double s) { return "s" + format_number(s); }

std::string rule_tag(const AlphaRule& rule) {
  switch (rule.kind) {
    case AlphaRule::Kind::Zero:
      return "zero";
    case AlphaRule::Kind::SemiclassicalWithDrive:
      return "ac";
    case AlphaRule::Kind::SemiclassicalNoDrive:
      return "ac0";
    case AlphaRule::Kind::ExactPhoton:
      return "exact";
    case AlphaRule::Kind::Fixed:
      return "fixed" + format_number(rule.value);
  }
  return "rule";
}

std::vector<SpinSpace> spin_list(const ScenarioParams& params) {
  std::vector<SpinSpace> out;
  for (double s : params.reals("spins")) out.emplace_back(s);
  return out;
}

std::vector<AlphaRule> rule_list(const ScenarioParams& params) {
  std::vector<AlphaRule> out;
  for (const auto& w : params.words("alpha_rules")) out.push_back(parse_alpha_rule(w));
  return out;
}

// Per-point bookkeeping so that workers never share mutable state.
struct PointLog {
  std::vector<PointFailure> failures;
  std::vector<PointFailure> skipped;

  template <typename F>
  double guard(const std::string& series, double coordinate, F&& f) {
    try {
      return f();
    } catch (const AlphaOutOfRange& e) {
      skipped.push_back({series, coordinate, e.what()});
    } catch (const Error& e) {
      failures.push_back({series, coordinate, e.what()});
    }
    return kNaN;
  }
};

void merge_logs(const std::vector<PointLog>& logs, ScenarioResult& result) {
  for (const auto& log : logs) {
    result.failures.insert(result.failures.end(), log.failures.begin(), log.failures.end());
    result.skipped.insert(result.skipped.end(), log.skipped.begin(), log.skipped.end());
  }
}

// Evaluates `fill(i, row, log)` for every grid index and stores the rows as columns.
template <typename Fill>
void sweep(const std::string& axis, const std::vector<double>& grid, const std::vector<std::string>& names,
           unsigned threads, ScenarioResult& result, Fill&& fill) {
  std::vector<std::vector<double>> rows(grid.size(), std::vector<double>(names.size(), kNaN));
  std::vector<PointLog> logs(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { fill(i, rows[i], logs[i]); });
  result.table.add_column(axis, grid);
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<double> col(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) col[i] = rows[i][k];
    result.table.add_column(names[k], std::move(col));
  }
  merge_logs(logs, result);
}

StateVector boson_ground(const FockSpace& fock, const KpoParams& kpo) {
  const OperatorMatrix h = build_kpo(fock, kpo);
  if (kpo.drive == 0.0) return ground_state(h, parity(fock)).state;
  return ground_state(h).state;
}

StateVector spin_ground(const SpinSpace& space, const KpoParams& kpo, double alpha, ExpansionOrder order) {
  const OperatorMatrix h =
      order == ExpansionOrder::First ? build_spin_first(space, kpo, alpha) : build_spin_second(space, kpo, alpha);
  if (kpo.drive == 0.0) return ground_state(h, spin_x_parity(space)).state;
  return ground_state(h).state;
}

double alpha_for(const AlphaRule& rule, const KpoParams& kpo, double photon_number_b) {
  if (rule.kind == AlphaRule::Kind::ExactPhoton) return std::sqrt(std::max(0.0, photon_number_b));
  return resolve_alpha(rule, kpo);
}

// ---------------------------------------------------------------------------

void run_single_sweep(const ScenarioParams& params, unsigned threads, bool photon, ScenarioResult& result) {
  const FockSpace fock(params.integer("cutoff"));
  const double delta = params.real("delta");
  const double drive = params.real("drive");
  const auto grid = uniform_grid(params.real("p_min"), params.real("p_max"), params.real("p_step"));
  const auto spins = spin_list(params);
  const auto rules = rule_list(params);

  std::vector<std::string> names{photon ? "photon_boson" : "quadrature_boson", "alpha_c"};
  for (const auto& rule : rules)
    for (const auto& sp : spins) names.push_back((photon ? "f_sp_" : "f_sq_") + spin_label(sp.s()) + "_" + rule_tag(rule));

  sweep("p_tilde", grid, names, threads, result, [&](std::size_t i, std::vector<double>& row, PointLog& log) {
    const KpoParams kpo{delta, grid[i], drive};
    const double p = grid[i];
    double n_b = kNaN;
    row[0] = log.guard(names[0], p, [&] {
      const StateVector psi = boson_ground(fock, kpo);
      n_b = photon_number(psi, fock);
      return photon ? n_b : quadrature(psi, fock);
    });
    row[1] = alpha_c(kpo);
    std::size_t k = 2;
    for (const auto& rule : rules)
      for (const auto& sp : spins) {
        row[k] = log.guard(names[k], p, [&] {
          if (rule.kind == AlphaRule::Kind::ExactPhoton && std::isnan(n_b))
            throw NoConvergence("exact-photon alpha needs the oscillator ground state");
          const double alpha = alpha_for(rule, kpo, n_b);
          const StateVector psi = spin_ground(sp, kpo, alpha, ExpansionOrder::First);
          return photon ? f_sp(psi, sp) : f_sq(psi, sp, alpha);
        });
        ++k;
      }
  });
}

void run_second_order(const ScenarioParams& params, unsigned threads, ScenarioResult& result) {
  const FockSpace fock(params.integer("cutoff"));
  const KpoParams sp_base{params.real("delta_sp"), 0.0, params.real("drive_sp")};
  const KpoParams sq_base{params.real("delta_sq"), 0.0, params.real("drive_sq")};
  const auto grid = uniform_grid(params.real("p_min"), params.real("p_max"), params.real("p_step"));
  const auto spins = spin_list(params);
  const AlphaRule rule = parse_alpha_rule(params.text("alpha_rule"));

  std::vector<std::string> names{"photon_boson"};
  for (const auto& sp : spins) names.push_back("f_sp1_" + spin_label(sp.s()));
  for (const auto& sp : spins) names.push_back("f_sp2_" + spin_label(sp.s()));
  names.push_back("quadrature_boson");
  for (const auto& sp : spins) names.push_back("f_sq1_" + spin_label(sp.s()));
  for (const auto& sp : spins) names.push_back("f_sq2_" + spin_label(sp.s()));

  sweep("p_tilde", grid, names, threads, result, [&](std::size_t i, std::vector<double>& row, PointLog& log) {
    const double p = grid[i];
    std::size_t k = 0;
    for (const bool photon : {true, false}) {
      KpoParams kpo = photon ? sp_base : sq_base;
      kpo.pump = p;
      double n_b = kNaN;
      row[k] = log.guard(names[k], p, [&] {
        const StateVector psi = boson_ground(fock, kpo);
        n_b = photon_number(psi, fock);
        return photon ? n_b : quadrature(psi, fock);
      });
      ++k;
      for (const auto order : {ExpansionOrder::First, ExpansionOrder::Second})
        for (const auto& sp : spins) {
          row[k] = log.guard(names[k], p, [&] {
            if (rule.kind == AlphaRule::Kind::ExactPhoton && std::isnan(n_b))
              throw NoConvergence("exact-photon alpha needs the oscillator ground state");
            const double alpha = alpha_for(rule, kpo, n_b);
            const StateVector psi = spin_ground(sp, kpo, alpha, order);
            return photon ? f_sp(psi, sp) : f_sq(psi, sp, alpha, order);
          });
          ++k;
        }
    }
  });
}

void run_overlap(const ScenarioParams& params, ScenarioResult& result) {
  const FockSpace fock(params.integer("cutoff"));
  const KpoParams kpo{params.real("delta"), params.real("pump"), params.real("drive")};
  const auto spins = spin_list(params);
  const auto rules = rule_list(params);
  PointLog log;
  double n_b = kNaN;
  StateVector boson;
  log.guard("boson", 0.0, [&] {
    boson = boson_ground(fock, kpo);
    n_b = photon_number(boson, fock);
    return n_b;
  });

  std::vector<double> s_col;
  for (const auto& sp : spins) s_col.push_back(sp.s());
  result.table.add_column("s", s_col);
  for (const auto& rule : rules) {
    const std::string tag = rule_tag(rule);
    std::vector<double> alphas, overlaps;
    for (const auto& sp : spins) {
      double alpha = kNaN;
      overlaps.push_back(log.guard("overlap_" + tag, sp.s(), [&] {
        if (boson.size() == 0) throw NoConvergence("oscillator ground state unavailable");
        alpha = alpha_for(rule, kpo, n_b);
        return overlap(boson, spin_ground(sp, kpo, alpha, ExpansionOrder::First), sp);
      }));
      alphas.push_back(alpha);
    }
    result.table.add_column("alpha_" + tag, std::move(alphas));
    result.table.add_column("overlap_" + tag, std::move(overlaps));
  }
  merge_logs({log}, result);
}

void run_wigner_panel(const ScenarioParams& params, unsigned threads, ScenarioResult& result) {
  const FockSpace fock(params.integer("cutoff"));
  const KpoParams kpo{params.real("delta"), params.real("pump"), params.real("drive")};
  const auto spec = WignerGridSpec::square(params.real("half_width"), params.integer("points"));
  if (!(spec.x_max > 0.0) || spec.nx < 2) throw InvalidArgument("wigner-panel: need half_width > 0 and points >= 2");

  struct Panel {
    std::string label;
    std::optional<AlphaRule> rule;
    double s = 0.0;
  };
  std::vector<Panel> panels;
  for (const auto& w : params.words("panels")) {
    if (w == "boson") {
      panels.push_back({"boson", std::nullopt, 0.0});
      continue;
    }
    const auto colon = w.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("wigner-panel: panel '" + w + "' is not boson or <rule>:<s>");
    const AlphaRule rule = parse_alpha_rule(w.substr(0, colon));
    const double s = SpinSpace(parse_real("panels", w.substr(colon + 1))).s();
    panels.push_back({spin_label(s) + "_" + rule_tag(rule), rule, s});
  }

  const StateVector boson = boson_ground(fock, kpo);
  const double n_b = photon_number(boson, fock);

  const std::size_t n = panels.size();
  std::vector<std::optional<WignerGrid>> grids(n);
  std::vector<double> alpha(n, kNaN), wmin(n, kNaN), wmax(n, kNaN), wint(n, kNaN), ov(n, kNaN);
  std::vector<PointLog> logs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const Panel& panel = panels[i];
    logs[i].guard(panel.label, static_cast<double>(i), [&] {
      if (!panel.rule) {
        grids[i] = wigner(boson, fock, spec);
        alpha[i] = 0.0;
        ov[i] = 1.0;
      } else {
        const SpinSpace sp(panel.s);
        alpha[i] = alpha_for(*panel.rule, kpo, n_b);
        const StateVector psi = spin_ground(sp, kpo, alpha[i], ExpansionOrder::First);
        const FockSpace embed(std::max(fock.cutoff(), static_cast<int>(sp.dim())));
        grids[i] = wigner_spin(psi, sp, embed, spec);
        ov[i] = overlap(boson, psi, sp);
      }
      wmin[i] = grids[i]->min();
      wmax[i] = grids[i]->max();
      wint[i] = grids[i]->integral();
      return 0.0;
    });
  });

  std::vector<double> index(n), s_col(n);
  for (std::size_t i = 0; i < n; ++i) {
    index[i] = static_cast<double>(i);
    s_col[i] = panels[i].s;
    if (grids[i]) result.grids.push_back({panels[i].label, std::move(*grids[i])});
  }
  result.table.add_column("panel", index);
  result.table.add_column("s", s_col);
  result.table.add_column("alpha", alpha);
  result.table.add_column("w_min", wmin);
  result.table.add_column("w_max", wmax);
  result.table.add_column("w_integral", wint);
  result.table.add_column("overlap", ov);
  for (std::size_t i = 0; i < n; ++i) result.table.meta.push_back({"panel." + format_number(i), panels[i].label});
  merge_logs(logs, result);
}

void run_pair(const ScenarioParams& params, unsigned threads, ScenarioResult& result) {
  const FockSpace fock(params.integer("cutoff"));
  const double delta = params.real("delta");
  const double e1 = params.real("drive1");
  const double e2 = params.real("drive2");
  const double j = params.real("coupling");
  const double xi0 = params.real("xi0");
  const auto grid = uniform_grid(params.real("p_min"), params.real("p_max"), params.real("p_step"));
  const auto spins = spin_list(params);
  const AlphaRule rule = parse_alpha_rule(params.text("alpha_rule"));

  std::vector<std::string> names{"c_boson", "alpha_c0"};
  for (const auto& sp : spins) names.push_back("c_spin_" + spin_label(sp.s()));
  for (const auto& sp : spins) names.push_back("c_spin_zz_" + spin_label(sp.s()));

  sweep("p_tilde", grid, names, threads, result, [&](std::size_t i, std::vector<double>& row, PointLog& log) {
    const double p = grid[i];
    const PairParams pp{{delta, p, e1}, {delta, p, e2}, j, xi0};
    row[0] = log.guard(names[0], p, [&] {
      const OperatorMatrix h = build_kpo_pair(fock, pp);
      const bool symmetric = e1 == 0.0 && e2 == 0.0;
      const OperatorMatrix par = kron(parity(fock), parity(fock));
      return correlation_boson(ground_state(h, symmetric ? std::optional(par) : std::nullopt).state, fock);
    });
    row[1] = alpha_c0(pp.site1);
    std::size_t k = 2;
    for (const bool yy : {true, false})
      for (const auto& sp : spins) {
        row[k] = log.guard(names[k], p, [&] {
          const SpinModelParams model{rule, ExpansionOrder::First, yy};
          const double alpha = resolve_pair_alpha(pp, model);
          expansion_denominator(sp, alpha);
          return correlation_spin(ground_state(build_spin_pair(sp, pp, model)).state, sp, alpha);
        });
        ++k;
      }
  });
}

MeanFieldOptions solver_options(const ScenarioParams& params) {
  MeanFieldOptions o;
  o.tol = params.real("tol");
  o.damping = params.real("damping");
  o.seed = params.real("seed");
  o.max_iter = params.integer("max_iter");
  return o;
}

std::vector<std::pair<std::string, MeanFieldSetup>> mf_models(const ScenarioParams& params) {
  std::vector<std::pair<std::string, MeanFieldSetup>> models;
  MeanFieldSetup boson;
  boson.model = MeanFieldModel::Boson;
  boson.coupling = params.real("coupling");
  boson.fock = FockSpace(params.integer("cutoff"));
  models.emplace_back("boson", boson);
  for (const auto& sp : spin_list(params)) {
    MeanFieldSetup spin = boson;
    spin.model = MeanFieldModel::Spin;
    spin.spin = sp;
    spin.spin_model = {parse_alpha_rule(params.text("alpha_rule")), ExpansionOrder::First, true};
    models.emplace_back(spin_label(sp.s()), spin);
  }
  return models;
}

void run_mf_curve(const ScenarioParams& params, unsigned threads, ScenarioResult& result) {
  const KpoParams base{params.real("delta"), 0.0, params.real("drive")};
  const auto grid = uniform_grid(params.real("p_min"), params.real("p_max"), params.real("p_step"));
  const auto options = solver_options(params);
  const auto models = mf_models(params);

  std::vector<std::vector<double>> cols(models.size(), std::vector<double>(grid.size(), kNaN));
  std::vector<PointLog> logs(models.size());
  // Warm starts make each curve sequential; the models run side by side.
  parallel_for(models.size(), threads, [&](std::size_t m) {
    const auto& [label, setup] = models[m];
    const std::string series = setup.model == MeanFieldModel::Boson ? "x_boson" : "mz_bar_" + label;
    MeanFieldOptions local = options;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      KpoParams kpo = base;
      kpo.pump = grid[i];
      cols[m][i] = logs[m].guard(series, grid[i], [&] {
        const auto sol = solve_mf(setup, kpo, local);
        local.seed = sol.order_param + options.seed;
        if (!sol.converged) {
          std::ostringstream os;
          os << (sol.status == MeanFieldStatus::OscillationDetected ? "oscillation detected" : "no convergence")
             << " after " << sol.iterations << " evaluations (residual " << sol.residual << ")";
          throw NoConvergence(os.str());
        }
        return sol.scaled;
      });
    }
  });
  result.table.add_column("p_tilde", grid);
  for (std::size_t m = 0; m < models.size(); ++m)
    result.table.add_column(m == 0 ? "x_boson" : "mz_bar_" + models[m].first, std::move(cols[m]));
  merge_logs(logs, result);
}

void run_phase_diagram(const ScenarioParams& params, unsigned threads, ScenarioResult& result) {
  const auto deltas = uniform_grid(params.real("delta_min"), params.real("delta_max"), params.real("delta_step"));
  const double drive = params.real("drive");
  const double p_min = params.real("p_min");
  const double p_max = params.real("p_max");
  CriticalPumpOptions options;
  options.coarse_step = params.real("coarse_step");
  options.bracket_width = params.real("bracket_width");
  options.onset_tol = params.real("onset_tol");
  options.solver = solver_options(params);
  const auto models = mf_models(params);

  const std::size_t jobs = models.size() * deltas.size();
  std::vector<std::vector<double>> found(jobs);
  std::vector<PointLog> logs(jobs);
  parallel_for(jobs, threads, [&](std::size_t job) {
    const auto& [label, setup] = models[job / deltas.size()];
    const double delta = deltas[job % deltas.size()];
    double upper = p_max;
    // alpha_c0^2 = p - delta must stay below 2s; stop the scan at that edge.
    const auto kind = setup.spin_model.alpha_rule.kind;
    if (setup.model == MeanFieldModel::Spin && drive == 0.0 &&
        (kind == AlphaRule::Kind::SemiclassicalNoDrive || kind == AlphaRule::Kind::SemiclassicalWithDrive)) {
      const double edge = delta + 2.0 * setup.spin.s();
      if (edge <= p_max) {
        upper = edge - 1e-6;
        logs[job].skipped.push_back({"pc_" + label, delta, "pump range clipped at the alpha^2 < 2s edge"});
      }
    }
    logs[job].guard("pc_" + label, delta, [&] {
      if (!(upper > p_min)) return 0.0;
      found[job] = critical_pump(setup, {delta, 0.0, drive}, p_min, upper, options);
      return 0.0;
    });
  });

  std::vector<double> s_col, d_col, idx_col, pc_col;
  for (std::size_t job = 0; job < jobs; ++job) {
    const auto& setup = models[job / deltas.size()].second;
    for (std::size_t c = 0; c < found[job].size(); ++c) {
      s_col.push_back(setup.model == MeanFieldModel::Boson ? 0.0 : setup.spin.s());
      d_col.push_back(deltas[job % deltas.size()]);
      idx_col.push_back(static_cast<double>(c + 1));
      pc_col.push_back(found[job][c]);
    }
  }
  result.table.add_column("s", std::move(s_col));
  result.table.add_column("delta", std::move(d_col));
  result.table.add_column("crossing", std::move(idx_col));
  result.table.add_column("p_c", std::move(pc_col));
  merge_logs(logs, result);
}

void report(const ScenarioResult& result, ScenarioId id) {
  for (const auto& f : result.failures) {
    std::ostringstream os;
    os << to_string(id) << ": " << f.series << " at " << f.coordinate << ": " << f.message;
    log_error(os.str());
  }
  // One line per series for undefined spin-model points.
  std::map<std::string, std::pair<int, std::pair<double, double>>> summary;
  for (const auto& s : result.skipped) {
    auto [it, fresh] = summary.try_emplace(s.series, 0, std::pair{s.coordinate, s.coordinate});
    ++it->second.first;
    it->second.second.first = std::min(it->second.second.first, s.coordinate);
    it->second.second.second = std::max(it->second.second.second, s.coordinate);
  }
  for (const auto& [series, info] : summary) {
    std::ostringstream os;
    os << to_string(id) << ": " << series << " outside the spin model's range (alpha^2 >= 2s) at " << info.first
       << " point(s) in [" << info.second.first << ", " << info.second.second << "]";
    warn(os.str());
  }
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog = make_catalog();
  return catalog;
}

const ScenarioInfo& scenario_info(ScenarioId id) {
  for (const auto& info : scenario_catalog())
    if (info.id == id) return info;
  throw InvalidArgument("unknown scenario id");
}

ScenarioId parse_scenario_id(std::string_view name) {
  for (const auto& info : scenario_catalog())
    if (info.name == name) return info.id;
  throw InvalidArgument("unknown scenario '" + std::string(name) + "' (see list-scenarios)");
}

std::string_view to_string(ScenarioId id) { return scenario_info(id).name; }

ScenarioParams::ScenarioParams(ScenarioId id) : id_(id), entries_(scenario_info(id).defaults) {}

void ScenarioParams::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = value;
      return;
    }
  std::string known;
  for (const auto& [k, v] : entries_) known += (known.empty() ? "" : ", ") + k;
  throw InvalidArgument("unknown parameter '" + key + "' for scenario " + std::string(to_string(id_)) +
                        " (known: " + known + ")");
}

void ScenarioParams::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidArgument("expected key=value, got '" + assignment + "'");
  const std::string key = trim(std::string_view(assignment).substr(0, eq));
  if (key.empty()) throw InvalidArgument("expected key=value, got '" + assignment + "'");
  set(key, trim(std::string_view(assignment).substr(eq + 1)));
}

bool ScenarioParams::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& ScenarioParams::text(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw InvalidArgument("scenario " + std::string(to_string(id_)) + " has no parameter '" + key + "'");
}

double ScenarioParams::real(const std::string& key) const { return parse_real(key, text(key)); }

int ScenarioParams::integer(const std::string& key) const {
  const std::string& t = text(key);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw InvalidArgument("parameter '" + key + "': '" + t + "' is not an integer");
  return v;
}

bool ScenarioParams::flag(const std::string& key) const {
  const std::string& t = text(key);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw InvalidArgument("parameter '" + key + "': '" + t + "' is not a boolean");
}

std::vector<double> ScenarioParams::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : split(text(key), ',')) out.push_back(parse_real(key, w));
  if (out.empty()) throw InvalidArgument("parameter '" + key + "' is empty");
  return out;
}

std::vector<std::string> ScenarioParams::words(const std::string& key) const {
  auto out = split(text(key), ',');
  if (out.empty()) throw InvalidArgument("parameter '" + key + "' is empty");
  return out;
}

std::vector<std::string> read_config_assignments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (!body.empty()) out.push_back(body);
  }
  return out;
}

void SeriesTable::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != rows())
    throw DimensionMismatch("SeriesTable: column '" + name + "' has " + std::to_string(values.size()) +
                            " rows, expected " + std::to_string(rows()));
  if (has_column(name)) throw InvalidArgument("SeriesTable: duplicate column '" + name + "'");
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

bool SeriesTable::has_column(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& SeriesTable::column(std::string_view name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("SeriesTable: no column '" + std::string(name) + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw InvalidArgument("grid: need finite lo <= hi");
  if (hi == lo) return {lo};
  if (!(step > 0.0)) throw InvalidArgument("grid: step must be positive");
  const auto n = static_cast<long>(std::llround((hi - lo) / step));
  if (n < 1 || n > 1000000) throw InvalidArgument("grid: step does not fit the range");
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  return g;
}

ScenarioResult run_scenario(const ScenarioParams& params, unsigned threads) {
  ScenarioResult result;
  result.table.meta.push_back({"scenario", std::string(to_string(params.id()))});
  result.table.meta.push_back({"version", KPO_VERSION});
  for (const auto& [k, v] : params.entries()) result.table.meta.push_back({"param." + k, v});

  switch (params.id()) {
    case ScenarioId::PhotonSweep:
      run_single_sweep(params, threads, true, result);
      break;
    case ScenarioId::QuadratureSweep:
      run_single_sweep(params, threads, false, result);
      break;
    case ScenarioId::SecondOrderSweep:
      run_second_order(params, threads, result);
      break;
    case ScenarioId::OverlapVsS:
      run_overlap(params, result);
      break;
    case ScenarioId::WignerPanel:
      run_wigner_panel(params, threads, result);
      break;
    case ScenarioId::PairCorrelation:
      run_pair(params, threads, result);
      break;
    case ScenarioId::MfCurve:
      run_mf_curve(params, threads, result);
      break;
    case ScenarioId::PhaseDiagram:
      run_phase_diagram(params, threads, result);
      break;
  }
  report(result, params.id());
  return result;
}

}  // namespace kpo
