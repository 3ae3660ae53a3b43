#include "abduction/learners/linear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "abduction/error.hpp"
#include "abduction/train.hpp"

namespace abduction::learners {

namespace {

double affine(std::span<const double> params, std::span<const double> x) {
  double v = params.back();
  for (std::size_t i = 0; i < x.size(); ++i) {
    v += params[i] * x[i];
  }
  return v;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

LinearModel from_params(std::span<const double> p, del::Form form) {
  LinearModel f;
  f.w.assign(p.begin(), p.end() - 1);
  f.b = p.back();
  f.form = form;
  return f;
}

void require_nonempty(std::span<const del::Instance> rows) {
  if (rows.empty()) {
    throw Error("empty dataset");
  }
}

void require_kind(const LabeledDataset& s, LabelKind kind, const char* who) {
  require_nonempty(s.rows());
  if (s.label_kind() != kind) {
    throw Error(std::string(who) + " needs " + to_string(kind) + " labels");
  }
}

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<std::vector<double>(std::span<const double>)>;

/// Fixed-step descent from zero; every iterate is a candidate and the first
/// one with the smallest objective is selected.
LinearFit descend(std::size_t dim, const Objective& objective, const Gradient& gradient, double step,
                  std::size_t iters, del::Form form) {
  if (iters < 1) {
    throw Error("iters must be at least 1");
  }
  if (!(step > 0.0)) {
    throw Error("step must be positive");
  }
  std::vector<double> p(dim + 1, 0.0);
  std::vector<double> best = p;
  double best_value = objective(p);
  LinearFit fit;
  fit.best_so_far.reserve(iters + 1);
  fit.best_so_far.push_back(best_value);
  for (std::size_t t = 1; t <= iters; ++t) {
    const auto g = gradient(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] -= step * g[i];
    }
    const double v = objective(p);
    if (v < best_value) {
      best_value = v;
      best = p;
      fit.best_iteration = t;
    }
    fit.best_so_far.push_back(best_value);
  }
  fit.model = from_params(best, form);
  return fit;
}

double criterion_at(const del::ExplanationCriterion& c, const LinearModel& f, std::span<const del::Instance> rows) {
  return del::criterion_value(c, f.hypothesis(del::observed_points(rows)), rows);
}

// SVR on already expanded rows; shared by the linear and kernel variants.
LinearFit svr_core(std::span<const del::Instance> rows, double eps, double lambda, double step, std::size_t iters) {
  require_nonempty(rows);
  if (!(eps >= 0.0) || !(lambda >= 0.0)) {
    throw Error("svr needs eps >= 0 and lambda >= 0");
  }
  const std::size_t n = rows.front().x.size();
  const auto rules = svr_explanation_rules(rows.size(), eps, lambda);
  auto objective = [&](std::span<const double> p) { return criterion_at(rules, from_params(p, del::Form::linear), rows); };
  auto gradient = [&](std::span<const double> p) {
    std::vector<double> g(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = 2.0 * lambda * p[i];
    }
    for (const auto& r : rows) {
      const double res = r.feedback() - affine(p, r.x);
      if (std::abs(res) <= eps) {
        continue;
      }
      const double sign = res > 0.0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        g[i] += sign * r.x[i];
      }
      g[n] += sign;
    }
    return g;
  };
  return descend(n, objective, gradient, step, iters, del::Form::linear);
}

}  // namespace

double LinearModel::operator()(std::span<const double> x) const {
  std::vector<double> expanded;
  if (form == del::Form::basis_linear) {
    expanded.reserve(basis.size());
    for (const auto& h : basis) {
      expanded.push_back(h(x));
    }
    x = expanded;
  }
  if (x.size() != w.size()) {
    throw Error("dimension mismatch");
  }
  double v = b;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v += w[i] * x[i];
  }
  return form == del::Form::logistic ? sigmoid(v) : v;
}

std::vector<double> LinearModel::params() const {
  auto p = w;
  p.push_back(b);
  return p;
}

del::Hypothesis LinearModel::hypothesis(std::vector<std::vector<double>> support) const {
  switch (form) {
    case del::Form::logistic:
      return del::logistic(w, b, std::move(support));
    case del::Form::basis_linear:
      return del::basis_linear(basis, w, b, std::move(support));
    default:
      return del::linear(w, b, std::move(support));
  }
}

// ---------------------------------------------------------------------------

del::ExplanationCriterion logistic_explanation_criterion() {
  return {{del::BadnessRule{del::align::Pointwise{}, del::dev::LogYDist{kLogClamp}, agg::l1(), 0}},
          del::Regularization::none,
          del::combine::Single{}};
}

double logistic_criterion(std::span<const double> params, const LabeledDataset& s) {
  require_nonempty(s.rows());
  if (params.size() != s.features() + 1) {
    throw Error("dimension mismatch");
  }
  return criterion_at(logistic_explanation_criterion(), from_params(params, del::Form::logistic), s.rows());
}

std::vector<double> logistic_gradient(std::span<const double> params, const LabeledDataset& s) {
  require_nonempty(s.rows());
  const std::size_t n = s.features();
  if (params.size() != n + 1) {
    throw Error("dimension mismatch");
  }
  std::vector<double> g(n + 1, 0.0);
  const double inv_m = 1.0 / static_cast<double>(s.size());
  for (const auto& r : s.rows()) {
    const double f = sigmoid(affine(params, r.x));
    const double y = r.feedback();
    if (std::abs(y - f) < kLogClamp) {
      continue;
    }
    // d/dz log|y - f| with f' = f(1 - f): -f for y = 1, 1 - f for y = 0.
    const double dz = (y == 1.0 ? -f : 1.0 - f) * inv_m;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += dz * r.x[i];
    }
    g[n] += dz;
  }
  return g;
}

LinearFit logistic_fit(const LabeledDataset& s, double step, std::size_t iters) {
  require_kind(s, LabelKind::binary01, "logistic regression");
  return descend(
      s.features(), [&](std::span<const double> p) { return logistic_criterion(p, s); },
      [&](std::span<const double> p) { return logistic_gradient(p, s); }, step, iters, del::Form::logistic);
}

// ---------------------------------------------------------------------------

double svm_slack_minimum(const LinearModel& f, const LabeledDataset& s, double alpha) {
  require_nonempty(s.rows());
  double slack = 0.0;
  for (const auto& r : s.rows()) {
    slack += std::max(1.0 - r.feedback() * f(r.x), 0.0);
  }
  double norm = 0.0;
  for (double v : f.w) {
    norm += v * v;
  }
  return alpha * norm + slack / static_cast<double>(s.size());
}

bool in_normalized_class(const LinearModel& f, const LabeledDataset& s, double tol) {
  double q = std::numeric_limits<double>::infinity();
  for (const auto& r : s.rows()) {
    const double v = f(r.x);
    if (r.feedback() * v > 0.0) {
      q = std::min(q, std::abs(v));
    }
  }
  return std::isfinite(q) && std::abs(q - 1.0) <= tol;
}

del::ExplanationCriterion svm_explanation_rules(double alpha) {
  return {{del::BadnessRule{del::align::Pointwise{}, del::dev::SignClassYDist{}, agg::l1(), 0}},
          del::Regularization::squared_gradient_norm,
          del::combine::WeightedSum{{1.0, alpha}}};
}

double svm_explanation_criterion(const LinearModel& f, const LabeledDataset& s, double alpha) {
  require_kind(s, LabelKind::pm1, "svm");
  if (!in_normalized_class(f, s)) {
    throw Error("not in normalized class");
  }
  return criterion_at(svm_explanation_rules(alpha), f, s.rows());
}

LinearFit svm_fit(const LabeledDataset& s, double alpha, double step, std::size_t iters) {
  require_kind(s, LabelKind::pm1, "svm");
  if (!(alpha >= 0.0)) {
    throw Error("alpha must be nonnegative");
  }
  const std::size_t n = s.features();
  const double inv_m = 1.0 / static_cast<double>(s.size());
  auto objective = [&](std::span<const double> p) {
    return svm_slack_minimum(from_params(p, del::Form::linear), s, alpha);
  };
  auto gradient = [&](std::span<const double> p) {
    std::vector<double> g(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = 2.0 * alpha * p[i];
    }
    for (const auto& r : s.rows()) {
      const double y = r.feedback();
      if (1.0 - y * affine(p, r.x) <= 0.0) {
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        g[i] -= y * r.x[i] * inv_m;
      }
      g[n] -= y * inv_m;
    }
    return g;
  };
  auto fit = descend(n, objective, gradient, step, iters, del::Form::linear);

  double q = std::numeric_limits<double>::infinity();
  for (const auto& r : s.rows()) {
    const double v = fit.model(r.x);
    if (r.feedback() * v > 0.0) {
      q = std::min(q, std::abs(v));
    }
  }
  if (std::isfinite(q)) {
    for (auto& v : fit.model.w) {
      v /= q;
    }
    fit.model.b /= q;
    fit.rescaled = true;
  }
  return fit;
}

// ---------------------------------------------------------------------------

double epsilon_insensitive(double r, double eps) {
  const double a = std::abs(r);
  return a < eps ? 0.0 : a - eps;
}

del::ExplanationCriterion svr_explanation_rules(std::size_t m, double eps, double lambda) {
  // The averaging rule times m gives the plain sum of losses.
  return {{del::BadnessRule{del::align::Pointwise{}, del::dev::EpsilonInsensitive{eps}, agg::l1(), 0}},
          del::Regularization::squared_gradient_norm,
          del::combine::WeightedSum{{static_cast<double>(m), lambda}}};
}

double svr_objective(const LinearModel& f, const LabeledDataset& s, double eps, double lambda) {
  require_nonempty(s.rows());
  return criterion_at(svr_explanation_rules(s.size(), eps, lambda), f, s.rows());
}

LinearFit svr_fit(const LabeledDataset& s, double eps, double lambda, double step, std::size_t iters) {
  return svr_core(s.rows(), eps, lambda, step, iters);
}

LinearFit kernel_svr_fit(const LabeledDataset& s, const std::vector<del::BasisFunction>& basis, double eps,
                         double lambda, double step, std::size_t iters) {
  if (basis.empty()) {
    throw Error("kernel svr needs a nonempty basis");
  }
  require_nonempty(s.rows());
  const auto expanded = train::apply_focusing(train::focus::BasisExpansion{basis}, s.rows());
  auto fit = svr_core(expanded.instances, eps, lambda, step, iters);
  fit.model.form = del::Form::basis_linear;
  fit.model.basis = basis;
  return fit;
}

// ---------------------------------------------------------------------------

del::ExplanationCriterion ridge_explanation_rules(double alpha) {
  return {{del::BadnessRule{del::align::Pointwise{}, del::dev::SquareYDist{}, agg::l1(), 0}},
          del::Regularization::squared_gradient_norm,
          del::combine::WeightedSum{{1.0, alpha}}};
}

double ridge_objective(const LinearModel& f, const LabeledDataset& s, double alpha) {
  require_nonempty(s.rows());
  return criterion_at(ridge_explanation_rules(alpha), f, s.rows());
}

LinearModel ridge_fit(const LabeledDataset& s, double alpha) {
  require_nonempty(s.rows());
  if (!(alpha >= 0.0)) {
    throw Error("alpha must be nonnegative");
  }
  const auto n = static_cast<Eigen::Index>(s.features());
  const auto m = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd x(m, n + 1);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = s.x(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      x(i, j) = row[static_cast<std::size_t>(j)];
    }
    x(i, n) = 1.0;
    y(i) = s.y(static_cast<std::size_t>(i));
  }
  // Stationarity: (X'X/m + alpha D) theta = X'y/m, D = diag(1,...,1,0).
  Eigen::MatrixXd a = x.transpose() * x / static_cast<double>(m);
  a.diagonal().head(n).array() += alpha;
  const Eigen::VectorXd rhs = x.transpose() * y / static_cast<double>(m);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw Error("singular ridge system");
  }
  const Eigen::VectorXd theta = lu.solve(rhs);
  LinearModel f;
  f.w.assign(theta.data(), theta.data() + n);
  f.b = theta(n);
  return f;
}

}  // namespace abduction::learners
