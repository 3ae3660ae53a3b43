#include "abduction/learners/dataset.hpp"

#include <algorithm>

#include "abduction/error.hpp"

namespace abduction::learners {

std::string to_string(LabelKind kind) {
  switch (kind) {
    case LabelKind::binary01:
      return "binary01";
    case LabelKind::pm1:
      return "pm1";
    case LabelKind::real:
      return "real";
  }
  return "real";
}

LabelKind infer_label_kind(std::span<const double> labels) {
  if (labels.empty()) {
    return LabelKind::real;
  }
  if (std::all_of(labels.begin(), labels.end(), [](double y) { return y == 0.0 || y == 1.0; })) {
    return LabelKind::binary01;
  }
  if (std::all_of(labels.begin(), labels.end(), [](double y) { return y == -1.0 || y == 1.0; })) {
    return LabelKind::pm1;
  }
  return LabelKind::real;
}

LabeledDataset::LabeledDataset(const std::vector<std::vector<double>>& features, const std::vector<double>& labels,
                               LabelKind kind)
    : kind_(kind) {
  if (features.size() != labels.size()) {
    throw Error("feature and label counts differ");
  }
  n_ = features.empty() ? 0 : features.front().size();
  rows_.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != n_) {
      throw Error("dimension mismatch");
    }
    const double y = labels[i];
    if ((kind == LabelKind::binary01 && y != 0.0 && y != 1.0) ||
        (kind == LabelKind::pm1 && y != -1.0 && y != 1.0)) {
      throw Error("label does not match label kind " + to_string(kind));
    }
    rows_.push_back(del::observation(features[i], y));
  }
}

LabeledDataset::LabeledDataset(const std::vector<std::vector<double>>& features, const std::vector<double>& labels)
    : LabeledDataset(features, labels, infer_label_kind(labels)) {}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.n_ = n_;
  out.kind_ = kind_;
  out.rows_.reserve(indices.size());
  for (auto i : indices) {
    out.rows_.push_back(rows_.at(i));
  }
  return out;
}

}  // namespace abduction::learners
