#include "abduction/learners/tree.hpp"

#include <algorithm>
#include <deque>
#include <memory>

#include "abduction/error.hpp"
#include "abduction/train.hpp"

namespace abduction::learners {

namespace {

struct NodeParam {
  std::size_t node = 0;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Split {
  std::size_t feature;
  double threshold;
  double right_lower;  // smallest observed value above the threshold
};

std::size_t errors_of(std::size_t ones, std::size_t count) { return std::min(ones, count - ones); }

std::optional<Split> best_split(std::span<const del::Instance> rows, std::size_t n) {
  std::optional<Split> best;
  std::size_t best_errors = 0;
  for (std::size_t f = 0; f < n; ++f) {
    std::vector<std::pair<double, int>> values;
    values.reserve(rows.size());
    for (const auto& r : rows) {
      values.emplace_back(r.x[f], r.feedback() == 1.0 ? 1 : 0);
    }
    std::sort(values.begin(), values.end());
    std::size_t total_ones = 0;
    for (const auto& v : values) {
      total_ones += static_cast<std::size_t>(v.second);
    }
    std::size_t left_count = 0;
    std::size_t left_ones = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      ++left_count;
      left_ones += static_cast<std::size_t>(values[i].second);
      if (values[i].first == values[i + 1].first) {
        continue;
      }
      const auto errors = errors_of(left_ones, left_count) +
                          errors_of(total_ones - left_ones, values.size() - left_count);
      if (!best || errors < best_errors) {
        best = Split{f, values[i].first, values[i + 1].first};
        best_errors = errors;
      }
    }
  }
  return best;
}

bool inside(const TreeNode& node, std::span<const double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= node.lower[j] && x[j] <= node.upper[j])) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool satisfies_leaf_criterion(std::size_t count, double prevalent_fraction, std::size_t cap_n, double q) {
  return count < cap_n || prevalent_fraction >= q;
}

DecisionTreeModel decision_tree_fit(const LabeledDataset& s, std::size_t cap_n, double q) {
  if (s.empty()) {
    throw Error("empty dataset");
  }
  if (s.label_kind() != LabelKind::binary01) {
    throw Error("decision tree needs binary {0,1} labels");
  }
  const std::size_t n = s.features();

  struct Builder {
    std::vector<TreeNode> nodes;
    std::deque<NodeParam> pending;
  };
  auto builder = std::make_shared<Builder>();

  NodeParam root{0, s.x(0), s.x(0)};
  for (const auto& r : s.rows()) {
    for (std::size_t j = 0; j < n; ++j) {
      root.lower[j] = std::min(root.lower[j], r.x[j]);
      root.upper[j] = std::max(root.upper[j], r.x[j]);
    }
  }
  builder->nodes.push_back(TreeNode{root.lower, root.upper});

  train::BasicTrainingConfig<NodeParam> bcfg;
  bcfg.focusing = [](const NodeParam& g) -> train::Focusing { return train::focus::SubdomainSubset{g.lower, g.upper}; };
  bcfg.enumerate = [](const train::Focused& f, const NodeParam&) {
    auto support = del::observed_points(f.instances);
    return std::vector<del::Hypothesis>{del::constant(0.0, support), del::constant(1.0, std::move(support))};
  };
  bcfg.criterion = [](const train::Focused&, const NodeParam&) {
    return del::ExplanationCriterion{{del::pointwise_rule()}, del::Regularization::none, del::combine::Single{}};
  };

  using Trace = train::TrainingTrace<NodeParam>;
  train::WrapperConfig<NodeParam, DecisionTreeModel> wcfg;
  wcfg.first = root;
  // A binary tree whose splits never leave a side empty has at most 2m - 1 nodes.
  wcfg.max_iterations = 2 * s.size();
  wcfg.weight = [cap_n, q, n, builder](const train::Selection& sel, const NodeParam& g) {
    auto& node = builder->nodes[g.node];
    node.count = sel.focused.instances.size();
    node.prevalent_fraction = 1.0 - sel.value;
    node.label = static_cast<int>(sel.hypothesis.params.at(0));
    if (satisfies_leaf_criterion(node.count, node.prevalent_fraction, cap_n, q)) {
      return 1.0;
    }
    const auto split = best_split(sel.focused.instances, n);
    if (!split) {
      node.forced = true;
      return 1.0;
    }
    // Generate the parameters of the two child subdomains.
    node.leaf = false;
    node.feature = split->feature;
    node.threshold = split->threshold;
    NodeParam left{builder->nodes.size(), g.lower, g.upper};
    left.upper[split->feature] = split->threshold;
    NodeParam right{builder->nodes.size() + 1, g.lower, g.upper};
    right.lower[split->feature] = split->right_lower;
    node.left = static_cast<int>(left.node);
    node.right = static_cast<int>(right.node);
    builder->nodes.push_back(TreeNode{left.lower, left.upper});
    builder->nodes.push_back(TreeNode{right.lower, right.upper});
    builder->pending.push_back(std::move(left));
    builder->pending.push_back(std::move(right));
    return 0.0;
  };
  wcfg.stop = [builder](const Trace&) { return builder->pending.empty(); };
  wcfg.next = [builder](const NodeParam&, const Trace&) -> std::optional<NodeParam> {
    if (builder->pending.empty()) {
      return std::nullopt;
    }
    auto g = std::move(builder->pending.front());
    builder->pending.pop_front();
    return g;
  };
  wcfg.combine = [builder, cap_n, q](const Trace&) { return DecisionTreeModel{builder->nodes, cap_n, q}; };

  return train::wrapper_run(wcfg, bcfg, s.rows()).first;
}

std::optional<int> decision_tree_predict(const DecisionTreeModel& model, std::span<const double> x) {
  if (model.nodes.empty()) {
    return std::nullopt;
  }
  if (x.size() != model.nodes.front().lower.size()) {
    throw Error("dimension mismatch");
  }
  const TreeNode* node = &model.nodes.front();
  while (inside(*node, x)) {
    if (node->leaf) {
      return node->label;
    }
    node = &model.nodes[static_cast<std::size_t>(x[node->feature] <= node->threshold ? node->left : node->right)];
  }
  return std::nullopt;
}

}  // namespace abduction::learners
