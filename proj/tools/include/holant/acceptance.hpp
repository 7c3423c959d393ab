#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace holant::acceptance {

struct CriterionResult {
  int id = 0;
  std::string group;  // filter name accepted by --only
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::string only;               // group name or criterion number; empty runs all
  std::uint64_t seed = 20240917;  // drives every randomized check
  std::string data_dir;           // holds figure1.json and the crossing fixtures
};

/// Criterion ids and groups in run order.
std::vector<std::pair<int, std::string>> criteria();

/// Runs the selected criteria; `on_result` sees each result as it finishes.
/// Throws MalformedInput for an unknown filter.
std::vector<CriterionResult> run(const Options& options,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3 p3em       ... (0.42 s)"
std::string format_line(const CriterionResult& r);

}  // namespace holant::acceptance
