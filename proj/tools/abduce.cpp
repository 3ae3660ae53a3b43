// Command-line front end: run one learner, compare learners, or run the
// acceptance self test.

#include <CLI11.hpp>
#include <iostream>

#include "abduction/acceptance.hpp"
#include "abduction/cli/csv.hpp"
#include "abduction/cli/experiment.hpp"
#include "abduction/cli/report.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kSelfTestFailed = 3;

struct Options {
  std::vector<std::string> learners;
  std::string data;
  std::vector<std::string> params;
  std::vector<std::string> queries;
  std::uint64_t seed = 0;
  std::string format = "text";
  double train_fraction = 1.0;
};

void add_data_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data, "CSV path (header, last column y) or synth:<generator>:<m>:<seed>")->required();
  cmd->add_option("--param", o.params, "learner parameter key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "seed for splits, initialization and seeding");
  cmd->add_option("--format", o.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
}

abduction::cli::ExperimentConfig make_config(const Options& o) {
  abduction::cli::ExperimentConfig cfg;
  cfg.data = o.data;
  cfg.seed = o.seed;
  cfg.train_fraction = o.train_fraction;
  for (const auto& p : o.params) {
    auto [k, v] = abduction::cli::parse_param(p);
    if (!cfg.params.emplace(k, v).second) {
      throw abduction::cli::ConfigError("parameter '" + k + "' given twice");
    }
  }
  for (const auto& q : o.queries) {
    cfg.queries.push_back(abduction::cli::parse_query(q));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abductive learners: run, compare, selftest"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "fit or apply one learner");
  run->add_option("--learner", o.learners, "learner name (see the learners subcommand)")->required()->expected(1);
  add_data_options(run, o);
  run->add_option("--query", o.queries, "query point, comma-separated (repeatable)");
  run->add_option("--train-fraction", o.train_fraction, "share of rows used for training; the rest is held out");

  auto* compare = app.add_subcommand("compare", "run several learners on one held-out split");
  compare->add_option("--learner", o.learners, "learner name (repeat, at least two)")->required();
  add_data_options(compare, o);
  double compare_fraction = 0.7;
  compare->add_option("--train-fraction", compare_fraction, "share of rows used for training")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--format", o.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));

  auto* list = app.add_subcommand("learners", "list learners and their parameters");
  list->add_option("--format", o.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const auto format = abduction::cli::parse_format(o.format);
    if (*selftest) {
      abduction::cli::Report r;
      r.title = "selftest";
      bool all = true;
      for (const auto& c : abduction::acceptance::run_all()) {
        all = all && c.passed;
        r.add("criterion")
            .add("id", static_cast<std::int64_t>(c.id))
            .add("result", c.passed ? "PASS" : "FAIL")
            .add("name", c.name)
            .add("detail", c.detail);
      }
      std::cout << abduction::cli::emit_report(r, format);
      return all ? 0 : kSelfTestFailed;
    }
    if (*list) {
      std::cout << abduction::cli::emit_report(abduction::cli::describe_learners(), format);
      return 0;
    }
    const auto cfg = make_config(o);
    if (*run) {
      auto c = cfg;
      c.learner = o.learners.front();
      std::cout << abduction::cli::emit_report(abduction::cli::run_experiment(c), format);
    } else {
      auto c = cfg;
      c.train_fraction = compare_fraction;
      std::cout << abduction::cli::emit_report(abduction::cli::compare_learners(o.learners, c), format);
    }
    return 0;
  } catch (const abduction::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const abduction::cli::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const abduction::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
}
