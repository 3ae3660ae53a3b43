#include "abduction/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "abduction/cli/csv.hpp"
#include "abduction/cli/synth.hpp"
#include "abduction/learners/clustering.hpp"
#include "abduction/learners/knn.hpp"
#include "abduction/learners/linear.hpp"
#include "abduction/learners/naive_bayes.hpp"
#include "abduction/learners/nn.hpp"
#include "abduction/learners/tree.hpp"

namespace abduction::cli {

using learners::LabeledDataset;
using learners::LabelKind;

namespace {

ParamSpec real(std::string name, std::string def, std::string help) {
  return {std::move(name), ParamKind::real, std::move(def), std::move(help)};
}
ParamSpec count(std::string name, std::string def, std::string help) {
  return {std::move(name), ParamKind::count, std::move(def), std::move(help)};
}
ParamSpec text(std::string name, std::string def, std::string help) {
  return {std::move(name), ParamKind::text, std::move(def), std::move(help)};
}

enum class Task { classify01, classify_pm1, regress, cluster };

Task task_of(const std::string& name) {
  if (name == "svm") {
    return Task::classify_pm1;
  }
  if (name == "svr" || name == "kernel_svr" || name == "ridge") {
    return Task::regress;
  }
  if (name == "linkage" || name == "kmeans") {
    return Task::cluster;
  }
  return Task::classify01;
}

std::string join(std::span<const double> v) {
  std::ostringstream os;
  os << std::setprecision(10);
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? "," : "") << v[i];
  }
  return os.str();
}

/// Resolved, typed learner parameters.
class Params {
 public:
  Params(const LearnerInfo& info, const std::map<std::string, std::string>& given, bool ignore_unknown) {
    for (const auto& [k, v] : given) {
      const bool known = std::any_of(info.params.begin(), info.params.end(), [&](const auto& p) { return p.name == k; });
      if (!known && !ignore_unknown) {
        std::string names;
        for (const auto& p : info.params) {
          names += (names.empty() ? "" : ", ") + p.name;
        }
        throw ConfigError("learner " + info.name + " has no parameter '" + k + "'" +
                          (names.empty() ? " (it takes none)" : " (valid: " + names + ")"));
      }
    }
    for (const auto& p : info.params) {
      const auto it = given.find(p.name);
      std::string v = it != given.end() ? it->second : p.default_value;
      if (v.empty()) {
        throw ConfigError("learner " + info.name + " requires parameter '" + p.name + "' (" + p.help + ")");
      }
      check(info.name, p, v);
      values_.emplace_back(p.name, std::move(v));
    }
  }

  double real(const std::string& k) const { return std::stod(get(k)); }
  std::size_t count(const std::string& k) const { return static_cast<std::size_t>(std::stoull(get(k))); }
  const std::string& text(const std::string& k) const { return get(k); }
  const std::vector<std::pair<std::string, std::string>>& all() const { return values_; }

 private:
  static void check(const std::string& learner, const ParamSpec& p, const std::string& v) {
    if (p.kind == ParamKind::text) {
      return;
    }
    std::size_t used = 0;
    bool ok = false;
    try {
      if (p.kind == ParamKind::count) {
        ok = v.find_first_not_of("0123456789") == std::string::npos;
        std::stoull(v, &used);
      } else {
        ok = std::isfinite(std::stod(v, &used));
      }
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok || used != v.size()) {
      throw ConfigError("learner " + learner + ": parameter '" + p.name + "' expects " +
                        (p.kind == ParamKind::count ? "a nonnegative integer" : "a real number") + ", got '" + v +
                        "'");
    }
  }

  const std::string& get(const std::string& k) const {
    for (const auto& [name, v] : values_) {
      if (name == k) {
        return v;
      }
    }
    throw ConfigError("unknown parameter " + k);
  }

  std::vector<std::pair<std::string, std::string>> values_;
};

LabeledDataset adapt(const LabeledDataset& s, Task task, const std::string& learner) {
  if (task == Task::regress || task == Task::cluster || s.empty()) {
    return s;
  }
  const auto want = task == Task::classify_pm1 ? LabelKind::pm1 : LabelKind::binary01;
  if (s.label_kind() == want) {
    return s;
  }
  if (s.label_kind() == LabelKind::real) {
    throw DataError("learner " + learner + " needs two-class labels ({0,1} or {-1,1})");
  }
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < s.size(); ++i) {
    x.push_back(s.x(i));
    const bool positive = s.y(i) == 1.0;
    y.push_back(positive ? 1.0 : (want == LabelKind::pm1 ? -1.0 : 0.0));
  }
  return {x, y, want};
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& s, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1]");
  }
  if (fraction == 1.0) {
    return {s, LabeledDataset{}};
  }
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(s.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, s.size());
  const std::span<const std::size_t> all(order);
  return {s.subset(all.first(n_train)), s.subset(all.subspan(n_train))};
}

struct Decision {
  std::optional<double> value;  // nullopt: refusal or undefined
  std::optional<std::size_t> k;
  std::optional<double> statistic;
};

using Predictor = std::function<Decision(const std::vector<double>&)>;

void record_linear_fit(Report& r, const learners::LinearFit& fit, const std::string& criterion) {
  r.add("fit")
      .add("criterion", criterion)
      .add("value", fit.best_so_far.back())
      .add("iterations", static_cast<std::int64_t>(fit.best_so_far.size() - 1))
      .add("best_iteration", static_cast<std::int64_t>(fit.best_iteration));
  r.add("model").add("w", join(fit.model.w)).add("b", fit.model.b);
}

Predictor from_adaptive(std::function<learners::AdaptiveDecision(const std::vector<double>&)> f) {
  return [f](const std::vector<double>& x) {
    const auto d = f(x);
    Decision out;
    if (d.label) {
      out.value = *d.label;
    }
    out.k = d.k;
    out.statistic = d.statistic;
    return out;
  };
}

/// Fits (or binds) the learner on `train`; fit summaries go to `r`.
Predictor fit(const std::string& name, const Params& p, const LabeledDataset& train, std::uint64_t seed, Report& r) {
  namespace L = learners;
  if (name == "knn") {
    const auto k = p.count("k");
    return [train, k](const std::vector<double>& x) { return Decision{L::knn_classify(train, x, k), k, {}}; };
  }
  if (name == "adaknn") {
    const double delta = p.real("delta");
    const double c1 = p.real("c1");
    return from_adaptive([train, delta, c1](const auto& x) { return L::ada_knn_classify(train, x, delta, c1); });
  }
  if (name == "hoeffding_knn") {
    return from_adaptive([train](const auto& x) { return L::hoeffding_knn_classify(train, x); });
  }
  if (name == "naive_bayes") {
    return [train](const std::vector<double>& x) { return Decision{L::naive_bayes_classify(train, x), {}, {}}; };
  }
  if (name == "tree") {
    auto model = L::decision_tree_fit(train, p.count("cap_n"), p.real("q"));
    std::size_t leaves = 0;
    std::size_t forced = 0;
    for (const auto& n : model.nodes) {
      leaves += n.leaf ? 1 : 0;
      forced += n.forced ? 1 : 0;
    }
    r.add("fit")
        .add("nodes", static_cast<std::int64_t>(model.nodes.size()))
        .add("leaves", static_cast<std::int64_t>(leaves))
        .add("forced_leaves", static_cast<std::int64_t>(forced));
    return [model](const std::vector<double>& x) {
      Decision d;
      if (const auto c = L::decision_tree_predict(model, x)) {
        d.value = *c;
      }
      return d;
    };
  }
  if (name == "logistic") {
    const auto f = L::logistic_fit(train, p.real("step"), p.count("iters"));
    record_linear_fit(r, f, "mean log|y - f(x)|");
    return [m = f.model](const std::vector<double>& x) { return Decision{m(x) > 0.5 ? 1.0 : 0.0, {}, {}}; };
  }
  if (name == "svm") {
    const auto f = L::svm_fit(train, p.real("alpha"), p.real("step"), p.count("iters"));
    record_linear_fit(r, f, "alpha |w|^2 + mean hinge");
    r.records.back().add("rescaled", f.rescaled ? "yes" : "no");
    return [m = f.model](const std::vector<double>& x) { return Decision{m(x) > 0.0 ? 1.0 : -1.0, {}, {}}; };
  }
  if (name == "svr" || name == "kernel_svr") {
    const double eps = p.real("eps");
    const double lambda = p.real("lambda");
    L::LinearFit f;
    if (name == "svr") {
      f = L::svr_fit(train, eps, lambda, p.real("step"), p.count("iters"));
    } else {
      std::vector<del::BasisFunction> basis;
      std::istringstream is(p.text("basis"));
      std::string item;
      while (std::getline(is, item, ',')) {
        try {
          basis.push_back(del::BasisFunction::parse(item));
        } catch (const Error& e) {
          throw ConfigError(e.what());
        }
      }
      f = L::kernel_svr_fit(train, basis, eps, lambda, p.real("step"), p.count("iters"));
    }
    record_linear_fit(r, f, "sum V_eps + lambda |w|^2");
    return [m = f.model](const std::vector<double>& x) { return Decision{m(x), {}, {}}; };
  }
  if (name == "ridge") {
    const double alpha = p.real("alpha");
    const auto m = L::ridge_fit(train, alpha);
    r.add("fit").add("criterion", "alpha |w|^2 + mean squared error").add("value", L::ridge_objective(m, train, alpha));
    r.add("model").add("w", join(m.w)).add("b", m.b);
    return [m](const std::vector<double>& x) { return Decision{m(x), {}, {}}; };
  }
  if (name == "nn") {
    const auto f = L::nn_fit(train, p.count("hidden"), p.real("step"), p.count("iters"), seed);
    r.add("fit")
        .add("criterion", "misclassifications")
        .add("value", static_cast<std::int64_t>(f.best_so_far.back()))
        .add("iterations", static_cast<std::int64_t>(f.best_so_far.size() - 1))
        .add("best_iteration", static_cast<std::int64_t>(f.best_iteration))
        .add("surrogate", f.surrogate[f.best_iteration]);
    return [m = f.model](const std::vector<double>& x) { return Decision{m.predict(x), {}, {}}; };
  }
  if (name == "linkage" || name == "kmeans") {
    std::vector<L::Point> points;
    for (std::size_t i = 0; i < train.size(); ++i) {
      points.push_back(train.x(i));
    }
    L::ClusterState st;
    if (name == "linkage") {
      const auto& kind = p.text("linkage");
      L::Linkage linkage = L::Linkage::single;
      if (kind == "average") {
        linkage = L::Linkage::average;
      } else if (kind == "complete") {
        linkage = L::Linkage::complete;
      } else if (kind != "single") {
        throw ConfigError("linkage must be single, average or complete, got '" + kind + "'");
      }
      st = L::linkage_cluster(points, linkage, p.count("k"));
    } else {
      const auto res = L::kmeans_run(points, p.count("k"), seed, p.count("rounds"));
      st = res.state;
      r.add("fit")
          .add("rounds", static_cast<std::int64_t>(res.rounds))
          .add("converged", res.converged ? "yes" : "no")
          .add("accepted_changes", static_cast<std::int64_t>(res.objective.size() - 1));
    }
    r.add("objective").add("W", L::within_cluster_pairwise(points, st.assignment));
    for (std::size_t c = 0; c < st.sizes.size(); ++c) {
      r.add("cluster").add("id", static_cast<std::int64_t>(c)).add("size", static_cast<std::int64_t>(st.sizes[c]))
          .add("center", join(st.centers[c]));
    }
    return [st](const std::vector<double>& x) {
      std::size_t best = 0;
      double best_d = INFINITY;
      for (std::size_t c = 0; c < st.centers.size(); ++c) {
        if (st.centers[c].size() != x.size()) {
          continue;
        }
        double d = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
          d += (x[j] - st.centers[c][j]) * (x[j] - st.centers[c][j]);
        }
        if (d < best_d) {
          best = c;
          best_d = d;
        }
      }
      return Decision{static_cast<double>(best), {}, {}};
    };
  }
  throw ConfigError("no runner for learner " + name);
}

struct Evaluation {
  std::size_t decided = 0;
  std::size_t refused = 0;
  std::size_t errors = 0;
  double squared = 0.0;
  double absolute = 0.0;
  std::vector<std::size_t> ks;
};

Evaluation evaluate(const Predictor& predict, const LabeledDataset& test, Task task) {
  Evaluation e;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto d = predict(test.x(i));
    if (d.k) {
      e.ks.push_back(*d.k);
    }
    if (!d.value) {
      ++e.refused;
      continue;
    }
    ++e.decided;
    const double r = *d.value - test.y(i);
    if (task == Task::regress) {
      e.squared += r * r;
      e.absolute += std::abs(r);
    } else if (r != 0.0) {
      ++e.errors;
    }
  }
  return e;
}

double median(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? static_cast<double>(v[n / 2]) : 0.5 * static_cast<double>(v[n / 2 - 1] + v[n / 2]);
}

void record_evaluation(Record& rec, const Evaluation& e, Task task) {
  rec.add("decided", static_cast<std::int64_t>(e.decided)).add("refused", static_cast<std::int64_t>(e.refused));
  const double n = static_cast<double>(std::max<std::size_t>(e.decided, 1));
  if (task == Task::regress) {
    rec.add("mse", e.squared / n).add("mae", e.absolute / n);
  } else {
    rec.add("errors", static_cast<std::int64_t>(e.errors)).add("error_rate", e.decided ? e.errors / n : 0.0);
  }
  if (!e.ks.empty()) {
    rec.add("k_median", median(e.ks))
        .add("k_min", static_cast<std::int64_t>(*std::min_element(e.ks.begin(), e.ks.end())))
        .add("k_max", static_cast<std::int64_t>(*std::max_element(e.ks.begin(), e.ks.end())));
  }
}

Record& record_decision(Report& r, std::span<const double> x, const Decision& d) {
  auto& rec = r.add("decision").add("query", join(x));
  if (d.value) {
    rec.add("decision", *d.value);
  } else {
    rec.add("decision", "undefined");
  }
  if (d.k) {
    rec.add("k", static_cast<std::int64_t>(*d.k));
  }
  if (d.statistic) {
    rec.add("statistic", *d.statistic);
  }
  return rec;
}

template <class F>
auto with_context(const std::string& learner, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const DataError&) {
    throw;
  } catch (const Error& e) {
    throw DataError(learner + ": " + e.what());
  }
}

}  // namespace

const std::vector<LearnerInfo>& learner_catalog() {
  static const std::vector<LearnerInfo> catalog = {
      {"linkage", "agglomerative clustering by single, average or complete linkage", false,
       {count("k", "", "number of clusters to stop at"), text("linkage", "single", "single | average | complete")}},
      {"knn", "k nearest neighbors, majority vote", true, {count("k", "", "neighborhood size")}},
      {"adaknn", "adaptive k: grow k until the class bias clears the threshold, else refuse", true,
       {real("delta", "0.1", "confidence parameter in (0,1)"), real("c1", "1", "threshold scale")}},
      {"hoeffding_knn", "adaptive k minimizing 2 exp(-2k (p - 1/2)^2)", true, {}},
      {"tree", "greedy decision tree over subdomains", false,
       {count("cap_n", "2", "leaf when fewer observations than this"),
        real("q", "1", "leaf when the prevalent class fraction reaches this")}},
      {"naive_bayes", "product of per-feature agreement rates", true, {}},
      {"logistic", "logistic regression, mean log |y - f(x)|", false,
       {real("step", "0.5", "descent step"), count("iters", "500", "descent iterations")}},
      {"svm", "linear SVM, hinge loss plus alpha |w|^2", false,
       {real("alpha", "0.01", "regularization weight"), real("step", "0.05", "subgradient step"),
        count("iters", "1000", "iterations")}},
      {"svr", "linear SVR, epsilon-insensitive loss plus lambda |w|^2", false,
       {real("eps", "0.1", "insensitivity width"), real("lambda", "0.01", "regularization weight"),
        real("step", "0.001", "subgradient step"), count("iters", "2000", "iterations")}},
      {"kernel_svr", "SVR after a basis expansion", false,
       {text("basis", "", "comma list of x<i>, x<i>^<d> or rbf:<c1>;<c2>:<gamma>"),
        real("eps", "0.1", "insensitivity width"), real("lambda", "0.01", "regularization weight"),
        real("step", "0.001", "subgradient step"), count("iters", "2000", "iterations")}},
      {"ridge", "ridge regression, closed form", false, {real("alpha", "1", "regularization weight")}},
      {"nn", "one hidden sigmoid layer, two voting outputs", false,
       {count("hidden", "2", "hidden units"), real("step", "0.5", "descent step"),
        count("iters", "500", "descent iterations")}},
      {"kmeans", "K-means on the pairwise within-cluster objective", false,
       {count("k", "", "number of clusters"), count("rounds", "100", "maximum assignment rounds")}},
  };
  return catalog;
}

const LearnerInfo& learner_info(const std::string& name) {
  for (const auto& info : learner_catalog()) {
    if (info.name == name) {
      return info;
    }
  }
  std::string names;
  for (const auto& info : learner_catalog()) {
    names += (names.empty() ? "" : ", ") + info.name;
  }
  throw ConfigError("unknown learner '" + name + "' (valid: " + names + ")");
}

std::pair<std::string, std::string> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("parameter must look like key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<double> parse_query(const std::string& text) {
  std::vector<double> q;
  std::istringstream is(text);
  std::string cell;
  while (std::getline(is, cell, ',')) {
    try {
      std::size_t used = 0;
      q.push_back(std::stod(cell, &used));
      if (used != cell.size()) {
        throw std::invalid_argument(cell);
      }
    } catch (const std::exception&) {
      throw ConfigError("query must be comma-separated numbers, got '" + text + "'");
    }
  }
  if (q.empty()) {
    throw ConfigError("empty query");
  }
  return q;
}

Report run_experiment(const ExperimentConfig& cfg) {
  const auto& info = learner_info(cfg.learner);
  const Params params(info, cfg.params, false);
  const auto task = task_of(info.name);
  const auto data = load_data(cfg.data);
  auto [train, test] = split(data, cfg.train_fraction, cfg.seed);
  train = adapt(train, task, info.name);
  test = adapt(test, task, info.name);

  Report r;
  r.title = "run " + info.name;
  auto& head = r.add("config")
                   .add("learner", info.name)
                   .add("data", cfg.data)
                   .add("seed", static_cast<std::int64_t>(cfg.seed))
                   .add("n", static_cast<std::int64_t>(data.features()))
                   .add("m_train", static_cast<std::int64_t>(train.size()))
                   .add("m_test", static_cast<std::int64_t>(test.size()))
                   .add("labels", learners::to_string(train.label_kind()));
  for (const auto& [k, v] : params.all()) {
    head.add(k, v);
  }

  with_context(info.name, [&] {
    const auto predict = fit(info.name, params, train, cfg.seed, r);
    for (const auto& q : cfg.queries) {
      if (q.size() != data.features()) {
        throw ConfigError("query " + join(q) + " has " + std::to_string(q.size()) + " coordinates, data has " +
                          std::to_string(data.features()));
      }
      record_decision(r, q, predict(q));
    }
    if (task != Task::cluster) {
      if (!info.per_query) {
        record_evaluation(r.add("train").add("m", static_cast<std::int64_t>(train.size())),
                          evaluate(predict, train, task), task);
      }
      if (!test.empty()) {
        record_evaluation(r.add("test").add("m", static_cast<std::int64_t>(test.size())),
                          evaluate(predict, test, task), task);
      }
    }
    return 0;
  });
  return r;
}

Report compare_learners(const std::vector<std::string>& names, const ExperimentConfig& cfg) {
  if (names.size() < 2) {
    throw ConfigError("compare needs at least two learners");
  }
  std::vector<const LearnerInfo*> infos;
  for (const auto& n : names) {
    infos.push_back(&learner_info(n));
    if (task_of(n) == Task::cluster) {
      throw ConfigError("compare works on supervised learners only; " + n + " is a clustering learner");
    }
  }
  for (const auto& [k, v] : cfg.params) {
    const bool used = std::any_of(infos.begin(), infos.end(), [&k](const LearnerInfo* i) {
      return std::any_of(i->params.begin(), i->params.end(), [&k](const auto& p) { return p.name == k; });
    });
    if (!used) {
      throw ConfigError("no compared learner takes parameter '" + k + "'");
    }
  }
  if (!(cfg.train_fraction < 1.0)) {
    throw ConfigError("compare needs a held-out split (train fraction below 1)");
  }
  const auto data = load_data(cfg.data);
  const auto [train_raw, test_raw] = split(data, cfg.train_fraction, cfg.seed);
  if (test_raw.empty()) {
    throw ConfigError("held-out split is empty; lower the train fraction");
  }

  Report r;
  r.title = "compare";
  for (const auto* i : infos) {
    r.title += " " + i->name;
  }
  r.add("config")
      .add("data", cfg.data)
      .add("seed", static_cast<std::int64_t>(cfg.seed))
      .add("m_train", static_cast<std::int64_t>(train_raw.size()))
      .add("m_test", static_cast<std::int64_t>(test_raw.size()));

  std::vector<std::pair<std::string, Evaluation>> results;
  for (const auto* info : infos) {
    const Params params(*info, cfg.params, true);
    const auto task = task_of(info->name);
    const auto train = adapt(train_raw, task, info->name);
    const auto test = adapt(test_raw, task, info->name);
    Report scratch;
    const auto e = with_context(info->name, [&] {
      const auto predict = fit(info->name, params, train, cfg.seed, scratch);
      return evaluate(predict, test, task);
    });
    record_evaluation(r.add("row").add("learner", info->name), e, task);
    results.emplace_back(info->name, e);
  }
  for (const auto& [name, e] : results) {
    std::map<std::size_t, std::size_t> hist;
    for (auto k : e.ks) {
      ++hist[k];
    }
    for (const auto& [k, c] : hist) {
      r.add("k_count").add("learner", name).add("k", static_cast<std::int64_t>(k)).add("count",
                                                                                      static_cast<std::int64_t>(c));
    }
  }
  return r;
}

Report describe_learners() {
  Report r;
  r.title = "learners";
  for (const auto& info : learner_catalog()) {
    r.add("learner").add("name", info.name).add("per_query", info.per_query ? "yes" : "no").add("summary",
                                                                                                  info.summary);
    for (const auto& p : info.params) {
      r.add("param")
          .add("learner", info.name)
          .add("name", p.name)
          .add("type", p.kind == ParamKind::real ? "real" : p.kind == ParamKind::count ? "count" : "text")
          .add("default", p.default_value.empty() ? "(required)" : p.default_value)
          .add("help", p.help);
    }
  }
  return r;
}

}  // namespace abduction::cli
