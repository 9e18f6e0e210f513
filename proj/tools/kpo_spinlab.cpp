#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kpo/acceptance.hpp"
#include "kpo/csv.hpp"
#include "kpo/errors.hpp"
#include "kpo/log.hpp"
#include "kpo/scenarios.hpp"
#include "kpo/svg.hpp"

namespace fs = std::filesystem;
using namespace kpo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAcceptance = 3;

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> columns_matching(const SeriesTable& t, const std::string& prefix, const std::string& suffix = "") {
  std::vector<std::string> out;
  for (const auto& n : t.names)
    if (starts_with(n, prefix) && ends_with(n, suffix)) out.push_back(n);
  return out;
}

std::string file_stem(ScenarioId id) {
  std::string s(to_string(id));
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::vector<std::string> rule_tags(const SeriesTable& t, const std::string& prefix) {
  std::set<std::string> tags;
  for (const auto& n : columns_matching(t, prefix)) {
    const auto cut = n.find('_', prefix.size());
    if (cut != std::string::npos) tags.insert(n.substr(cut + 1));
  }
  return {tags.begin(), tags.end()};
}

std::vector<std::string> with_front(std::string first, std::vector<std::string> rest) {
  rest.insert(rest.begin(), std::move(first));
  return rest;
}

// Long-format phase boundary to one column per model and crossing index.
SeriesTable phase_wide(const SeriesTable& t) {
  const auto& s = t.column("s");
  const auto& d = t.column("delta");
  const auto& k = t.column("crossing");
  const auto& pc = t.column("p_c");
  std::vector<double> deltas(d.begin(), d.end());
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  std::map<std::string, std::vector<double>> series;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(pc[i])) continue;
    const std::string name = (s[i] == 0.0 ? std::string("boson") : "s" + format_double(s[i])) + "_" +
                             format_double(k[i]);
    auto& col = series.try_emplace(name, deltas.size(), std::nan("")).first->second;
    col[std::lower_bound(deltas.begin(), deltas.end(), d[i]) - deltas.begin()] = pc[i];
  }
  SeriesTable wide;
  wide.add_column("delta", deltas);
  for (auto& [name, col] : series) wide.add_column("p_c_" + name, std::move(col));
  return wide;
}

void write_plots(const ScenarioResult& r, ScenarioId id, const fs::path& dir) {
  const auto& t = r.table;
  const std::string stem = file_stem(id);
  auto plot = [&](const std::string& suffix, const std::string& x, const std::vector<std::string>& ys,
                  PlotOptions opts, const SeriesTable* table = nullptr) {
    if (ys.empty()) return;
    opts.title = std::string(to_string(id)) + (suffix.empty() ? "" : " (" + suffix + ")");
    const std::string name = stem + (suffix.empty() ? "" : "_" + suffix) + ".svg";
    write_text_file((dir / name).string(), svg_line_plot(table ? *table : t, x, ys, opts));
  };
  switch (id) {
    case ScenarioId::PhotonSweep:
      for (const auto& tag : rule_tags(t, "f_sp_s"))
        plot(tag, "p_tilde", with_front("photon_boson", columns_matching(t, "f_sp_s", "_" + tag)),
             {.x_label = "p", .y_label = "photon number"});
      break;
    case ScenarioId::QuadratureSweep:
      for (const auto& tag : rule_tags(t, "f_sq_s"))
        plot(tag, "p_tilde", with_front("quadrature_boson", columns_matching(t, "f_sq_s", "_" + tag)),
             {.x_label = "p", .y_label = "quadrature"});
      break;
    case ScenarioId::SecondOrderSweep: {
      auto sp = columns_matching(t, "f_sp");
      auto sq = columns_matching(t, "f_sq");
      plot("photon", "p_tilde", with_front("photon_boson", sp), {.x_label = "p", .y_label = "photon number"});
      plot("quadrature", "p_tilde", with_front("quadrature_boson", sq), {.x_label = "p", .y_label = "quadrature"});
      break;
    }
    case ScenarioId::OverlapVsS:
      plot("", "s", columns_matching(t, "overlap_"), {.x_label = "s", .y_label = "overlap", .markers = true});
      break;
    case ScenarioId::WignerPanel:
      for (const auto& g : r.grids)
        write_text_file((dir / ("wigner_" + g.label + ".svg")).string(),
                        svg_heatmap(g.grid, {.title = "W " + g.label, .x_label = "x", .y_label = "y"}));
      break;
    case ScenarioId::PairCorrelation: {
      plot("full", "p_tilde", with_front("c_boson", columns_matching(t, "c_spin_s")),
           {.x_label = "p", .y_label = "correlation"});
      plot("zz", "p_tilde", with_front("c_boson", columns_matching(t, "c_spin_zz_")),
           {.x_label = "p", .y_label = "correlation"});
      break;
    }
    case ScenarioId::MfCurve:
      plot("", "p_tilde", with_front("x_boson", columns_matching(t, "mz_bar_")),
           {.x_label = "p", .y_label = "order parameter"});
      break;
    case ScenarioId::PhaseDiagram: {
      const SeriesTable wide = phase_wide(t);
      std::vector<std::string> ys(wide.names.begin() + 1, wide.names.end());
      plot("", "delta", ys, {.x_label = "delta", .y_label = "p_c", .markers = true}, &wide);
      break;
    }
  }
}

int finish(const ScenarioResult& r) { return r.failures.empty() ? kExitOk : kExitNumerical; }

unsigned thread_count(int requested) { return requested > 0 ? static_cast<unsigned>(requested) : 0u; }

struct RunArgs {
  std::string scenario;
  std::vector<std::string> sets;
  std::string config;
  std::string out = ".";
  bool svg = false;
  int cutoff = 0;
  int threads = 0;
};

int cmd_run(const RunArgs& a) {
  ScenarioParams params(parse_scenario_id(a.scenario));
  if (!a.config.empty())
    for (const auto& s : read_config_assignments(a.config)) params.set_assignment(s);
  for (const auto& s : a.sets) params.set_assignment(s);
  if (a.cutoff > 0) params.set("cutoff", std::to_string(a.cutoff));

  const ScenarioResult r = run_scenario(params, thread_count(a.threads));
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const auto csv = dir / (file_stem(params.id()) + ".csv");
  write_csv(csv.string(), r.table);
  std::cout << csv.string() << '\n';
  for (const auto& g : r.grids) {
    const auto path = dir / ("wigner_" + g.label + ".csv");
    write_wigner_csv(path.string(), g.grid, r.table.meta);
    std::cout << path.string() << '\n';
  }
  if (a.svg) write_plots(r, params.id(), dir);
  return finish(r);
}

struct WignerArgs {
  double delta = 1.0;
  double pump = 2.0;
  double drive = 0.0;
  double spin = 0.0;
  std::string alpha_rule = "semiclassical";
  int cutoff = 20;
  double half_width = 4.0;
  int points = 161;
  std::string out = ".";
  int threads = 0;
};

int cmd_wigner(const WignerArgs& a) {
  ScenarioParams params(ScenarioId::WignerPanel);
  params.set("delta", format_double(a.delta));
  params.set("pump", format_double(a.pump));
  params.set("drive", format_double(a.drive));
  params.set("cutoff", std::to_string(a.cutoff));
  params.set("half_width", format_double(a.half_width));
  params.set("points", std::to_string(a.points));
  params.set("panels", a.spin > 0.0 ? a.alpha_rule + ":" + format_double(a.spin) : "boson");

  const ScenarioResult r = run_scenario(params, thread_count(a.threads));
  const fs::path dir(a.out);
  fs::create_directories(dir);
  for (const auto& g : r.grids) {
    const auto csv = dir / ("wigner_" + g.label + ".csv");
    write_wigner_csv(csv.string(), g.grid, r.table.meta);
    write_text_file((dir / ("wigner_" + g.label + ".svg")).string(),
                    svg_heatmap(g.grid, {.title = "W " + g.label, .x_label = "x", .y_label = "y"}));
    std::cout << csv.string() << '\n';
  }
  return finish(r);
}

int cmd_verify(bool fast, int threads) {
  acceptance::SuiteOptions options{fast, thread_count(threads)};
  int failed = 0;
  acceptance::run_suite(options, [&](const acceptance::CriterionResult& r) {
    std::cout << acceptance::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  });
  return failed == 0 ? kExitOk : kExitAcceptance;
}

int cmd_list() {
  for (const auto& info : scenario_catalog()) {
    std::cout << info.name << "\n  " << info.summary << "\n ";
    for (const auto& [k, v] : info.defaults) std::cout << ' ' << k << '=' << v;
    std::cout << "\n";
  }
  return kExitOk;
}

int env_threads() {
  if (const char* env = std::getenv("KPO_SPINLAB_THREADS")) return std::atoi(env);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr parametric oscillators and their spin-s models"};
  app.require_subcommand(1);
  int threads = env_threads();
  app.add_option("--threads", threads, "worker threads (default: KPO_SPINLAB_THREADS or hardware)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "evaluate a scenario and write CSV (and SVG)");
  run_cmd->add_option("scenario", run.scenario, "scenario name, see list-scenarios")->required();
  run_cmd->add_option("--set", run.sets, "override a parameter, key=value (repeatable)");
  run_cmd->add_option("--config", run.config, "file of key=value lines, applied before --set")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_flag("--svg", run.svg, "also write SVG plots");
  run_cmd->add_option("--cutoff", run.cutoff, "Fock cutoff")->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", threads, "worker threads");

  WignerArgs wig;
  auto* wig_cmd = app.add_subcommand("wigner", "Wigner function of one ground state on a square grid");
  wig_cmd->add_option("--delta", wig.delta, "detuning")->capture_default_str();
  wig_cmd->add_option("--pump", wig.pump, "pump amplitude")->capture_default_str();
  wig_cmd->add_option("--drive", wig.drive, "coherent drive")->capture_default_str();
  wig_cmd->add_option("--spin", wig.spin, "spin length s; omit for the bosonic state");
  wig_cmd->add_option("--alpha-rule", wig.alpha_rule, "zero | semiclassical | semiclassical-nodrive | exact | fixed:v")
      ->capture_default_str();
  wig_cmd->add_option("--cutoff", wig.cutoff, "Fock cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  wig_cmd->add_option("--half-width", wig.half_width, "grid covers [-h, h]^2")->capture_default_str();
  wig_cmd->add_option("--points", wig.points, "points per axis")->capture_default_str();
  wig_cmd->add_option("--out", wig.out, "output directory");
  wig_cmd->add_option("--threads", threads, "worker threads");

  bool fast = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_flag("--fast", fast, "coarser grids for the pair sweep");
  verify_cmd->add_option("--threads", threads, "worker threads");

  auto* list_cmd = app.add_subcommand("list-scenarios", "print scenario names, summaries and defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) {
      run.threads = threads;
      return cmd_run(run);
    }
    if (*wig_cmd) {
      wig.threads = threads;
      return cmd_wigner(wig);
    }
    if (*verify_cmd) return cmd_verify(fast, threads);
    if (*list_cmd) return cmd_list();
  } catch (const InvalidArgument& e) {
    log_error(e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log_error(e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
