#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kpo::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values behind the verdict
  double seconds = 0.0;
};

struct SuiteOptions {
  bool fast = false;  // coarser pump grids for the pair criterion and the cutoff cross-check
  unsigned threads = 0;
};

using ResultSink = std::function<void(const CriterionResult&)>;

/// Runs every criterion in order, reporting each result as it completes.
std::vector<CriterionResult> run_suite(const SuiteOptions& options, const ResultSink& sink = {});

/// "PASS  3  <title>  (1.23 s)  <detail>"
std::string format_result(const CriterionResult& result);

}  // namespace kpo::acceptance
