#pragma once

// Single-hidden-layer network: z_i = sigmoid(g_i(x)) for k linear g_i, two
// linear voting functions f_0, f_1 on z, class = arg max f_c (ties to 0).

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "abduction/learners/dataset.hpp"

namespace abduction::learners {

struct NeuralNetModel {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  /// Flat layout: hidden weights (k x n, row-major), hidden biases (k),
  /// voting weights (2 x k, row-major), voting biases (2).
  std::vector<double> params;

  static std::size_t param_count(std::size_t inputs, std::size_t hidden);

  std::vector<double> hidden_layer(std::span<const double> x) const;
  /// {f_0(z(x)), f_1(z(x))}
  std::array<double, 2> votes(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
};

/// Mean softmax cross-entropy of the two votes against the label.
double nn_surrogate(const NeuralNetModel& net, const LabeledDataset& s);
/// Backpropagated gradient of nn_surrogate with respect to params.
std::vector<double> nn_surrogate_gradient(const NeuralNetModel& net, const LabeledDataset& s);

/// sum |y - C(x)| over the observations.
std::size_t nn_misclassifications(const NeuralNetModel& net, const LabeledDataset& s);

struct NeuralNetFit {
  NeuralNetModel model;
  /// Fewest misclassifications seen after each step; entry 0 is the start.
  std::vector<std::size_t> best_so_far;
  /// Surrogate value of every iterate.
  std::vector<double> surrogate;
  std::size_t best_iteration = 0;
};

/// Gaussian initialization (scale 0.5) from `seed`, then full-batch gradient
/// descent on the surrogate. The iterate with the fewest misclassifications
/// is returned, the earliest on ties.
NeuralNetFit nn_fit(const LabeledDataset& s, std::size_t k_hidden, double step, std::size_t iters,
                    std::uint64_t seed);

}  // namespace abduction::learners
