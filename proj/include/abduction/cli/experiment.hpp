#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abduction/cli/report.hpp"
#include "abduction/error.hpp"

namespace abduction::cli {

/// Invalid command-line configuration (unknown learner or key, bad value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ParamKind { real, count, text };

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::real;
  std::string default_value;  // empty: required
  std::string help;
};

struct LearnerInfo {
  std::string name;
  std::string summary;
  bool per_query = false;  // decides one query point at a time
  std::vector<ParamSpec> params;
};

const std::vector<LearnerInfo>& learner_catalog();
/// Throws ConfigError listing the valid names.
const LearnerInfo& learner_info(const std::string& name);

struct ExperimentConfig {
  std::string learner;
  std::map<std::string, std::string> params;
  std::string data;  // CSV path or synth:<generator>:<m>:<seed>
  std::vector<std::vector<double>> queries;
  std::uint64_t seed = 0;
  double train_fraction = 1.0;
};

/// "key=value"
std::pair<std::string, std::string> parse_param(const std::string& text);
/// "1.5,2,-3"
std::vector<double> parse_query(const std::string& text);

/// Fits or applies the learner on the training split, decides every query,
/// and evaluates on the held-out split when there is one.
Report run_experiment(const ExperimentConfig& cfg);

/// Runs several learners on the same split. Each parameter must be accepted
/// by at least one of them; a learner ignores keys it does not know.
Report compare_learners(const std::vector<std::string>& learners, const ExperimentConfig& cfg);

/// Catalog of learners and their parameters.
Report describe_learners();

}  // namespace abduction::cli
