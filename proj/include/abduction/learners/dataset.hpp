#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "abduction/del.hpp"

namespace abduction::learners {

enum class LabelKind { binary01, pm1, real };

std::string to_string(LabelKind kind);

/// {0,1} -> binary01, {-1,1} -> pm1, anything else -> real.
LabelKind infer_label_kind(std::span<const double> labels);

/// Observations sharing one feature count n.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  /// Throws when the rows are ragged or labels violate `kind`.
  LabeledDataset(const std::vector<std::vector<double>>& features, const std::vector<double>& labels, LabelKind kind);
  LabeledDataset(const std::vector<std::vector<double>>& features, const std::vector<double>& labels);

  std::span<const del::Instance> rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::size_t features() const { return n_; }
  LabelKind label_kind() const { return kind_; }

  const std::vector<double>& x(std::size_t i) const { return rows_[i].x; }
  double y(std::size_t i) const { return rows_[i].feedback(); }

  /// Rows at the given positions, same label kind.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<del::Instance> rows_;
  std::size_t n_ = 0;
  LabelKind kind_ = LabelKind::real;
};

}  // namespace abduction::learners
