#include "abduction/learners/nn.hpp"

#include <cmath>
#include <random>

#include "abduction/del.hpp"
#include "abduction/error.hpp"

namespace abduction::learners {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Layout {
  std::size_t n, k;
  std::size_t w1(std::size_t i, std::size_t j) const { return i * n + j; }
  std::size_t b1(std::size_t i) const { return k * n + i; }
  std::size_t w2(std::size_t c, std::size_t i) const { return k * n + k + c * k + i; }
  std::size_t b2(std::size_t c) const { return k * n + k + 2 * k + c; }
};

void check(const NeuralNetModel& net, const LabeledDataset& s) {
  if (s.empty()) {
    throw Error("empty dataset");
  }
  if (s.label_kind() != LabelKind::binary01) {
    throw Error("neural network needs binary {0,1} labels");
  }
  if (s.features() != net.inputs || net.params.size() != NeuralNetModel::param_count(net.inputs, net.hidden)) {
    throw Error("dimension mismatch");
  }
}

}  // namespace

std::size_t NeuralNetModel::param_count(std::size_t inputs, std::size_t hidden) {
  return hidden * inputs + hidden + 2 * hidden + 2;
}

std::vector<double> NeuralNetModel::hidden_layer(std::span<const double> x) const {
  if (x.size() != inputs) {
    throw Error("dimension mismatch");
  }
  const Layout l{inputs, hidden};
  std::vector<double> z(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    double g = params[l.b1(i)];
    for (std::size_t j = 0; j < inputs; ++j) {
      g += params[l.w1(i, j)] * x[j];
    }
    z[i] = sigmoid(g);
  }
  return z;
}

std::array<double, 2> NeuralNetModel::votes(std::span<const double> x) const {
  const Layout l{inputs, hidden};
  const auto z = hidden_layer(x);
  std::array<double, 2> f{};
  for (std::size_t c = 0; c < 2; ++c) {
    f[c] = params[l.b2(c)];
    for (std::size_t i = 0; i < hidden; ++i) {
      f[c] += params[l.w2(c, i)] * z[i];
    }
  }
  return f;
}

int NeuralNetModel::predict(std::span<const double> x) const {
  const auto f = votes(x);
  return f[1] > f[0] ? 1 : 0;
}

double nn_surrogate(const NeuralNetModel& net, const LabeledDataset& s) {
  check(net, s);
  double total = 0.0;
  for (const auto& r : s.rows()) {
    const auto f = net.votes(r.x);
    const std::size_t y = r.feedback() == 1.0 ? 1 : 0;
    // -log softmax_y = log(exp f0 + exp f1) - f_y, computed stably.
    const double hi = std::max(f[0], f[1]);
    const double lse = hi + std::log(std::exp(f[0] - hi) + std::exp(f[1] - hi));
    total += lse - f[y];
  }
  return total / static_cast<double>(s.size());
}

std::vector<double> nn_surrogate_gradient(const NeuralNetModel& net, const LabeledDataset& s) {
  check(net, s);
  const Layout l{net.inputs, net.hidden};
  std::vector<double> g(net.params.size(), 0.0);
  const double inv_m = 1.0 / static_cast<double>(s.size());
  for (const auto& r : s.rows()) {
    const auto z = net.hidden_layer(r.x);
    const auto f = net.votes(r.x);
    const std::size_t y = r.feedback() == 1.0 ? 1 : 0;
    const double p1 = sigmoid(f[1] - f[0]);
    const std::array<double, 2> df{(1.0 - p1) - (y == 0 ? 1.0 : 0.0), p1 - (y == 1 ? 1.0 : 0.0)};
    for (std::size_t c = 0; c < 2; ++c) {
      g[l.b2(c)] += df[c] * inv_m;
      for (std::size_t i = 0; i < net.hidden; ++i) {
        g[l.w2(c, i)] += df[c] * z[i] * inv_m;
      }
    }
    for (std::size_t i = 0; i < net.hidden; ++i) {
      const double dz = df[0] * net.params[l.w2(0, i)] + df[1] * net.params[l.w2(1, i)];
      const double dg = dz * z[i] * (1.0 - z[i]) * inv_m;
      g[l.b1(i)] += dg;
      for (std::size_t j = 0; j < net.inputs; ++j) {
        g[l.w1(i, j)] += dg * r.x[j];
      }
    }
  }
  return g;
}

std::size_t nn_misclassifications(const NeuralNetModel& net, const LabeledDataset& s) {
  check(net, s);
  // The network read as a table of its decisions at the observed points.
  auto support = del::observed_points(s.rows());
  std::vector<double> decisions;
  decisions.reserve(support.size());
  for (const auto& x : support) {
    decisions.push_back(net.predict(x));
  }
  const auto h = del::tabulated(std::move(support), std::move(decisions));
  const double rate = del::badness(del::pointwise_rule(), h, s.rows());
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(s.size())));
}

NeuralNetFit nn_fit(const LabeledDataset& s, std::size_t k_hidden, double step, std::size_t iters,
                    std::uint64_t seed) {
  if (k_hidden < 1) {
    throw Error("k_hidden must be at least 1");
  }
  if (iters < 1 || !(step > 0.0)) {
    throw Error("nn needs iters >= 1 and step > 0");
  }
  NeuralNetModel net{s.features(), k_hidden, {}};
  net.params.resize(NeuralNetModel::param_count(net.inputs, k_hidden));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.5);
  for (auto& p : net.params) {
    p = normal(rng);
  }
  check(net, s);

  NeuralNetFit fit;
  fit.model = net;
  std::size_t best = nn_misclassifications(net, s);
  fit.best_so_far.push_back(best);
  fit.surrogate.push_back(nn_surrogate(net, s));
  for (std::size_t t = 1; t <= iters && best > 0; ++t) {
    const auto g = nn_surrogate_gradient(net, s);
    for (std::size_t i = 0; i < g.size(); ++i) {
      net.params[i] -= step * g[i];
    }
    const auto errors = nn_misclassifications(net, s);
    if (errors < best) {
      best = errors;
      fit.model = net;
      fit.best_iteration = t;
    }
    fit.best_so_far.push_back(best);
    fit.surrogate.push_back(nn_surrogate(net, s));
  }
  return fit;
}

}  // namespace abduction::learners
