#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vtorus::repro {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;  ///< key numbers, one line
  double seconds = 0.0;
  double time_limit = 0.0;  ///< wall-clock bound that is part of the criterion; 0: none
  nlohmann::json details;
};

struct ReproOptions {
  std::vector<int> only;  ///< empty: all ten
  unsigned threads = 0;
};

/// Runs the acceptance table in order. `on_done` sees each result as soon as
/// it is available. A criterion that throws is reported as FAIL with the
/// error message.
std::vector<CriterionResult> run_acceptance(
    const ReproOptions& opts = {},
    const std::function<void(const CriterionResult&)>& on_done = {});

CriterionResult run_criterion(int id, unsigned threads = 0);

/// "PASS  3  Exp admissibility ...: summary [seconds]".
std::string format_line(const CriterionResult& r);

nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace vtorus::repro
