#pragma once

#include <istream>
#include <string>

#include "abduction/error.hpp"
#include "abduction/learners/dataset.hpp"

namespace abduction::cli {

/// Bad input data: unreadable file, malformed cell, inconsistent rows.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Header row required; the last column must be named "y". No quoting.
learners::LabeledDataset load_csv(const std::string& path);
learners::LabeledDataset parse_csv(std::istream& in, const std::string& source);

}  // namespace abduction::cli
