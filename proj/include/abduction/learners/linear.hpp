#pragma once

// Linear-form learners: logistic regression, linear SVM, linear and kernel
// SVR, ridge regression. Descent-based fits are plain (sub)gradient descent
// from zero with a fixed step, followed by optimal selection over the
// trajectory: the first iterate with the smallest criterion value wins.

#include <cstddef>
#include <span>
#include <vector>

#include "abduction/del.hpp"
#include "abduction/learners/dataset.hpp"

namespace abduction::learners {

struct LinearModel {
  std::vector<double> w;
  double b = 0.0;
  del::Form form = del::Form::linear;  // linear, logistic or basis_linear
  std::vector<del::BasisFunction> basis;  // basis_linear only

  /// f(x); basis_linear expands x first, logistic applies the sigmoid.
  double operator()(std::span<const double> x) const;
  /// {w..., b}
  std::vector<double> params() const;
  del::Hypothesis hypothesis(std::vector<std::vector<double>> support) const;
};

struct LinearFit {
  LinearModel model;
  /// Criterion of the best iterate seen after each step; entry 0 is the start.
  std::vector<double> best_so_far;
  std::size_t best_iteration = 0;
  /// svm_fit only: whether the model was rescaled into the normalized class.
  bool rescaled = false;
};

// ---------------------------------------------------------------------------
// Logistic regression: mean of log |y - f(x)| with the argument clamped at 1e-12.

inline constexpr double kLogClamp = 1e-12;

del::ExplanationCriterion logistic_explanation_criterion();
double logistic_criterion(std::span<const double> params, const LabeledDataset& s);
std::vector<double> logistic_gradient(std::span<const double> params, const LabeledDataset& s);
LinearFit logistic_fit(const LabeledDataset& s, double step, std::size_t iters);

// ---------------------------------------------------------------------------
// Linear SVM on {-1,+1} labels.

/// alpha |w|^2 + (1/m) sum max(1 - y f(x), 0)
double svm_slack_minimum(const LinearModel& f, const LabeledDataset& s, double alpha);

/// Correctly classified observations exist and the smallest |f(x)| among
/// them is 1 (within tol).
bool in_normalized_class(const LinearModel& f, const LabeledDataset& s, double tol = 1e-9);

/// Pointwise rule with the sign-class deviation plus regularization,
/// combined as x1 + alpha x2.
del::ExplanationCriterion svm_explanation_rules(double alpha);

/// Throws "not in normalized class" outside the normalized class.
double svm_explanation_criterion(const LinearModel& f, const LabeledDataset& s, double alpha);

/// Subgradient descent on svm_slack_minimum, then scaling by 1/q where q is
/// the smallest |f(x)| over correctly classified observations. With no
/// correctly classified observation the model is returned unscaled.
LinearFit svm_fit(const LabeledDataset& s, double alpha, double step, std::size_t iters);

// ---------------------------------------------------------------------------
// Support vector regression: sum V_eps(y - f(x)) + lambda |w|^2.

/// 0 when |r| < eps, |r| - eps otherwise.
double epsilon_insensitive(double r, double eps);

del::ExplanationCriterion svr_explanation_rules(std::size_t m, double eps, double lambda);
double svr_objective(const LinearModel& f, const LabeledDataset& s, double eps, double lambda);
LinearFit svr_fit(const LabeledDataset& s, double eps, double lambda, double step, std::size_t iters);

/// Expands x through `basis` and solves the linear problem in that space.
LinearFit kernel_svr_fit(const LabeledDataset& s, const std::vector<del::BasisFunction>& basis, double eps,
                         double lambda, double step, std::size_t iters);

// ---------------------------------------------------------------------------
// Ridge regression: alpha |w|^2 + (1/m) sum (f(x) - y)^2, bias unpenalized.

del::ExplanationCriterion ridge_explanation_rules(double alpha);
double ridge_objective(const LinearModel& f, const LabeledDataset& s, double alpha);

/// Closed-form solution; throws when the regularized system is singular.
LinearModel ridge_fit(const LabeledDataset& s, double alpha);

}  // namespace abduction::learners
