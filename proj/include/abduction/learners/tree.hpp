#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "abduction/learners/dataset.hpp"

namespace abduction::learners {

/// One subdomain: the closed box [lower, upper] of observed feature values.
struct TreeNode {
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t count = 0;            // observations in the subdomain
  double prevalent_fraction = 0.0;  // share of the prevalent class
  int label = 0;                    // selected constant hypothesis
  bool leaf = true;
  bool forced = false;              // leaf only because no split separates the rows
  std::size_t feature = 0;          // split: left holds x[feature] <= threshold
  double threshold = 0.0;
  int left = -1;
  int right = -1;
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t cap_n = 1;
  double q = 1.0;
};

/// Count below cap_n, or prevalent fraction at least q.
bool satisfies_leaf_criterion(std::size_t count, double prevalent_fraction, std::size_t cap_n, double q);

/// Greedy subdomain splitting. Each subdomain picks the constant hypothesis
/// with the lower T_pw error rate; splits minimize the total number of
/// training errors of the two children (ties: lowest feature, then lowest value).
DecisionTreeModel decision_tree_fit(const LabeledDataset& s, std::size_t cap_n, double q);

/// Leaf label for x, or nullopt when x falls outside every leaf box.
std::optional<int> decision_tree_predict(const DecisionTreeModel& model, std::span<const double> x);

}  // namespace abduction::learners
