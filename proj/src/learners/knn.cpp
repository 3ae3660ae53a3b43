#include "abduction/learners/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "abduction/error.hpp"

namespace abduction::learners {

namespace {

void require_binary(const LabeledDataset& s) {
  if (s.empty()) {
    throw Error("empty dataset");
  }
  if (s.label_kind() != LabelKind::binary01) {
    throw Error("k-NN learners need binary {0,1} labels");
  }
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Incremental view of the neighborhoods of one query point.
class NeighborScan {
 public:
  NeighborScan(const LabeledDataset& s, std::span<const double> x0) {
    if (x0.size() != s.features()) {
      throw Error("dimension mismatch");
    }
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      d[i] = distance(s.x(i), x0);
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
    sorted_.reserve(s.size());
    ones_.assign(1, 0);
    for (auto i : order) {
      sorted_.push_back(d[i]);
      ones_.push_back(ones_.back() + (s.y(i) == 1.0 ? 1 : 0));
    }
  }

  struct Step {
    int label;
    std::size_t focus_size;
    double error_rate;
  };

  Step at(std::size_t k) const {
    const double dk = sorted_[k - 1];
    const auto eff = static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), dk) - sorted_.begin());
    const auto ones = ones_[eff];
    const auto zeros = eff - ones;
    // Mismatch counts of the constant hypotheses 0 and 1.
    const double r0 = static_cast<double>(ones) / static_cast<double>(eff);
    const double r1 = static_cast<double>(zeros) / static_cast<double>(eff);
    return r1 < r0 ? Step{1, eff, r1} : Step{0, eff, r0};
  }

 private:
  std::vector<double> sorted_;
  std::vector<std::size_t> ones_;
};

}  // namespace

train::BasicTrainingConfig<std::size_t> knn_training(std::vector<double> x0) {
  train::BasicTrainingConfig<std::size_t> cfg;
  cfg.focusing = [x0](const std::size_t& k) -> train::Focusing { return train::focus::NearestSubset{x0, k}; };
  cfg.enumerate = [x0](const train::Focused&, const std::size_t&) {
    return std::vector<del::Hypothesis>{del::constant(0.0, {x0}), del::constant(1.0, {x0})};
  };
  cfg.criterion = [x0](const train::Focused& f, const std::size_t&) {
    return del::ExplanationCriterion{
        {del::BadnessRule{del::align::Ball{x0, f.radius}, del::dev::YDist{}, agg::l1(), 0}},
        del::Regularization::none,
        del::combine::Single{}};
  };
  return cfg;
}

int knn_classify(const LabeledDataset& s, std::span<const double> x0, std::size_t k) {
  require_binary(s);
  if (k < 1 || k > s.size()) {
    throw Error("k must lie in [1, m]");
  }
  if (x0.size() != s.features()) {
    throw Error("dimension mismatch");
  }
  const auto cfg = knn_training({x0.begin(), x0.end()});
  const auto sel = train::basic_train(cfg, s.rows(), k);
  return static_cast<int>(sel.hypothesis.params.at(0));
}

double ada_threshold(std::size_t n, std::size_t k, double delta, double c1) {
  return c1 * std::sqrt((std::log(static_cast<double>(n)) + std::log(1.0 / delta)) / static_cast<double>(k));
}

double hoeffding_weight(std::size_t k, double p) {
  const double t = p - 0.5;
  return 2.0 * std::exp(-2.0 * static_cast<double>(k) * t * t);
}

AdaptiveDecision ada_knn_classify(const LabeledDataset& s, std::span<const double> x0, double delta, double c1) {
  require_binary(s);
  if (!(delta > 0.0 && delta < 1.0) || !(c1 > 0.0)) {
    throw Error("ada k-NN needs delta in (0,1) and c1 > 0");
  }
  const NeighborScan scan(s, x0);
  const std::size_t n = s.size();
  AdaptiveDecision last;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto step = scan.at(k);
    const double bias = (1.0 - step.error_rate) - 0.5;
    last = {std::nullopt, k, step.focus_size, bias};
    if (bias > ada_threshold(n, step.focus_size, delta, c1)) {
      last.label = step.label;
      return last;
    }
  }
  return last;
}

AdaptiveDecision hoeffding_knn_classify(const LabeledDataset& s, std::span<const double> x0) {
  require_binary(s);
  if (s.size() < 2) {
    throw Error("hoeffding k-NN needs at least two observations");
  }
  const NeighborScan scan(s, x0);
  AdaptiveDecision best;
  for (std::size_t k = 1; k + 1 <= s.size(); ++k) {
    const auto step = scan.at(k);
    const double w = hoeffding_weight(step.focus_size, 1.0 - step.error_rate);
    if (k == 1 || w <= best.statistic) {
      best = {step.label, k, step.focus_size, w};
    }
  }
  return best;
}

train::WrapperConfig<std::size_t, AdaptiveDecision> ada_knn_wrapper(std::size_t n, double delta, double c1) {
  using Trace = train::TrainingTrace<std::size_t>;
  train::WrapperConfig<std::size_t, AdaptiveDecision> w;
  w.first = 1;
  w.next = [n](const std::size_t& k, const Trace&) -> std::optional<std::size_t> {
    if (k >= n) {
      return std::nullopt;
    }
    return k + 1;
  };
  // Bias of the prevalent class: p - 0.5 with p = 1 - error rate.
  w.weight = [](const train::Selection& sel, const std::size_t&) { return (1.0 - sel.value) - 0.5; };
  auto passed = [n, delta, c1](const train::IterationRecord<std::size_t>& r) {
    return r.weight > ada_threshold(n, r.focus_size, delta, c1);
  };
  w.stop = [n, passed](const Trace& t) { return passed(t.iterations.back()) || t.iterations.back().q == n; };
  w.combine = [passed](const Trace& t) {
    const auto& r = t.iterations.back();
    AdaptiveDecision d{std::nullopt, r.q, r.focus_size, r.weight};
    if (passed(r)) {
      d.label = static_cast<int>(r.chosen.params.at(0));
    }
    return d;
  };
  return w;
}

train::WrapperConfig<std::size_t, AdaptiveDecision> hoeffding_knn_wrapper(std::size_t n) {
  using Trace = train::TrainingTrace<std::size_t>;
  train::WrapperConfig<std::size_t, AdaptiveDecision> w;
  w.first = 1;
  w.next = [n](const std::size_t& k, const Trace&) -> std::optional<std::size_t> {
    if (k + 1 >= n) {
      return std::nullopt;
    }
    return k + 1;
  };
  w.weight = [](const train::Selection& sel, const std::size_t&) {
    return hoeffding_weight(sel.focused.instances.size(), 1.0 - sel.value);
  };
  w.stop = [n](const Trace& t) { return t.iterations.back().q + 1 >= n; };
  w.combine = [](const Trace& t) {
    const train::IterationRecord<std::size_t>* best = nullptr;
    for (const auto& r : t.iterations) {
      if (!best || r.weight <= best->weight) {
        best = &r;
      }
    }
    return AdaptiveDecision{static_cast<int>(best->chosen.params.at(0)), best->q, best->focus_size, best->weight};
  };
  return w;
}

AdaptiveDecision ada_knn_by_wrapper(const LabeledDataset& s, std::span<const double> x0, double delta, double c1) {
  require_binary(s);
  return train::wrapper_run(ada_knn_wrapper(s.size(), delta, c1), knn_training({x0.begin(), x0.end()}), s.rows())
      .first;
}

AdaptiveDecision hoeffding_knn_by_wrapper(const LabeledDataset& s, std::span<const double> x0) {
  require_binary(s);
  if (s.size() < 2) {
    throw Error("hoeffding k-NN needs at least two observations");
  }
  return train::wrapper_run(hoeffding_knn_wrapper(s.size()), knn_training({x0.begin(), x0.end()}), s.rows()).first;
}

}  // namespace abduction::learners
