#pragma once

// k-NN and the two adaptive-k variants. All three focus on the ball of
// radius d_k around the query (ties at d_k included) and pick the constant
// hypothesis with the smaller error rate there; a class tie goes to 0.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "abduction/learners/dataset.hpp"
#include "abduction/train.hpp"

namespace abduction::learners {

int knn_classify(const LabeledDataset& s, std::span<const double> x0, std::size_t k);

/// Basic training of k-NN with parameter k at the query x0.
train::BasicTrainingConfig<std::size_t> knn_training(std::vector<double> x0);

struct AdaptiveDecision {
  std::optional<int> label;  // nullopt: refusal
  std::size_t k = 0;           // selected (or last tried) neighborhood parameter
  std::size_t focus_size = 0;  // observations within d_k
  double statistic = 0.0;      // bias t_k for Ada k-NN, weight W for Hoeffding k-NN

  friend bool operator==(const AdaptiveDecision&, const AdaptiveDecision&) = default;
};

/// c1 * sqrt((log n + log(1/delta)) / k)
double ada_threshold(std::size_t n, std::size_t k, double delta, double c1);

/// 2 * exp(-2 k (p - 0.5)^2)
double hoeffding_weight(std::size_t k, double p);

/// Grows k from 1 until the prevalent-class bias exceeds the threshold;
/// refuses when k reaches n without that happening.
AdaptiveDecision ada_knn_classify(const LabeledDataset& s, std::span<const double> x0, double delta, double c1);

/// Scans k = 1..n-1 and returns the class at the k minimizing the Hoeffding
/// weight, ties toward larger k.
AdaptiveDecision hoeffding_knn_classify(const LabeledDataset& s, std::span<const double> x0);

train::WrapperConfig<std::size_t, AdaptiveDecision> ada_knn_wrapper(std::size_t n, double delta, double c1);
train::WrapperConfig<std::size_t, AdaptiveDecision> hoeffding_knn_wrapper(std::size_t n);

/// The same learners expressed as wrapper_run over knn_training.
AdaptiveDecision ada_knn_by_wrapper(const LabeledDataset& s, std::span<const double> x0, double delta, double c1);
AdaptiveDecision hoeffding_knn_by_wrapper(const LabeledDataset& s, std::span<const double> x0);

}  // namespace abduction::learners
