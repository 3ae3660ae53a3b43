#pragma once

#include <functional>
#include <string>
#include <vector>

namespace abduction::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  /// `earlier` holds the results of the criteria already run.
  std::function<CriterionResult(const std::vector<CriterionResult>& earlier)> run;
};

/// The full acceptance suite in order. Every criterion uses fixed seeds.
const std::vector<Criterion>& criteria();

std::vector<CriterionResult> run_all();

/// "PASS  3 name: detail"
std::string format_result(const CriterionResult& r);

}  // namespace abduction::acceptance
