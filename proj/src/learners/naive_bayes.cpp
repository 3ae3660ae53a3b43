#include "abduction/learners/naive_bayes.hpp"

#include <vector>

#include "abduction/error.hpp"
#include "abduction/train.hpp"

namespace abduction::learners {

del::ExplanationCriterion naive_bayes_criterion(std::size_t features) {
  del::ExplanationCriterion c;
  for (std::size_t j = 0; j < features; ++j) {
    c.rules.push_back(del::BadnessRule{del::align::FeatureEquality{j}, del::dev::YDist{}, agg::l1(), j});
  }
  if (features == 1) {
    c.combining = del::combine::Single{};
  } else {
    c.combining = del::combine::OneMinusProductOfComplements{};
  }
  return c;
}

int naive_bayes_classify(const LabeledDataset& s, std::span<const double> z) {
  if (s.empty()) {
    throw Error("empty dataset");
  }
  if (s.label_kind() != LabelKind::binary01) {
    throw Error("naive Bayes needs binary {0,1} labels");
  }
  if (z.size() != s.features() || z.empty()) {
    throw Error("dimension mismatch");
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    bool seen = false;
    for (const auto& r : s.rows()) {
      seen = seen || r.x[j] == z[j];
    }
    if (!seen) {
      throw Error("unseen feature value");
    }
  }
  const std::vector<double> point(z.begin(), z.end());
  train::BasicTrainingConfig<int> cfg;
  cfg.enumerate = [&point](const train::Focused&, const int&) {
    return std::vector<del::Hypothesis>{del::constant(0.0, {point}), del::constant(1.0, {point})};
  };
  const auto criterion = naive_bayes_criterion(z.size());
  cfg.criterion = [&criterion](const train::Focused&, const int&) { return criterion; };
  // Equal products of agreement rates are rationals with a common
  // denominator; rounding must not break those ties.
  cfg.tie_tolerance = 1e-12;
  const auto sel = train::basic_train(cfg, s.rows(), 0);
  return static_cast<int>(sel.hypothesis.params.at(0));
}

}  // namespace abduction::learners
