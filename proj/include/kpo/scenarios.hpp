#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpo/observables.hpp"

namespace kpo {

enum class ScenarioId {
  PhotonSweep,
  WignerPanel,
  OverlapVsS,
  QuadratureSweep,
  SecondOrderSweep,
  PairCorrelation,
  MfCurve,
  PhaseDiagram
};

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct ScenarioInfo {
  ScenarioId id;
  std::string_view name;
  std::string_view summary;
  ParamList defaults;
};

const std::vector<ScenarioInfo>& scenario_catalog();
const ScenarioInfo& scenario_info(ScenarioId id);
/// Accepts the kebab-case names of scenario_catalog(); throws InvalidArgument.
ScenarioId parse_scenario_id(std::string_view name);
std::string_view to_string(ScenarioId id);

/// Flat key=value parameters of one scenario, seeded with its defaults.
/// Setting a key the scenario does not define is an error.
class ScenarioParams {
 public:
  explicit ScenarioParams(ScenarioId id);

  ScenarioId id() const { return id_; }
  void set(const std::string& key, const std::string& value);
  /// Parses "key=value".
  void set_assignment(const std::string& assignment);
  bool has(const std::string& key) const;

  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;

  /// All entries in catalog order.
  const ParamList& entries() const { return entries_; }

 private:
  ScenarioId id_;
  ParamList entries_;
};

/// Reads a flat key=value file: one assignment per line, '#' comments and
/// blank lines ignored.
std::vector<std::string> read_config_assignments(const std::string& path);

/// Named columns of equal length with free-form metadata.
struct SeriesTable {
  ParamList meta;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
  bool has_column(std::string_view name) const;
  const std::vector<double>& column(std::string_view name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

struct LabeledGrid {
  std::string label;
  WignerGrid grid;
};

/// A point that could not be computed; its table entry is NaN.
struct PointFailure {
  std::string series;
  double coordinate = 0.0;
  std::string message;
};

struct ScenarioResult {
  SeriesTable table;
  std::vector<LabeledGrid> grids;      // wigner-panel only
  std::vector<PointFailure> failures;  // numerical failures
  std::vector<PointFailure> skipped;   // alpha^2 >= 2s: the spin model is undefined there
};

/// Evaluates the scenario on its grid. Points are independent and spread over
/// `threads` workers (0 = KPO_SPINLAB_THREADS or hardware); the output does
/// not depend on the thread count.
ScenarioResult run_scenario(const ScenarioParams& params, unsigned threads = 0);

/// Pump grid p_min + (p_max - p_min) i / n with n = round((p_max - p_min) / p_step).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace kpo
