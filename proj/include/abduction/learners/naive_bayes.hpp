#pragma once

#include <span>

#include "abduction/del.hpp"
#include "abduction/learners/dataset.hpp"

namespace abduction::learners {

/// One badness rule per feature j (observations sharing z_j, |y1 - y2|,
/// averaging), combined by 1 - prod(1 - a_j).
del::ExplanationCriterion naive_bayes_criterion(std::size_t features);

/// The class c minimizing the combined criterion, i.e. maximizing
/// prod_j (1 - e(c, S_j)); ties go to class 0. Throws "unseen feature value"
/// when some S_j is empty.
int naive_bayes_classify(const LabeledDataset& s, std::span<const double> z);

}  // namespace abduction::learners
