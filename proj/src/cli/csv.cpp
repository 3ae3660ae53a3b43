#include "abduction/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace abduction::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

learners::LabeledDataset parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw DataError(source + ": empty file");
  }
  auto header = split(line);
  for (auto& h : header) {
    h = trim(h);
  }
  if (header.size() < 2 || header.back() != "y") {
    throw DataError(source + ": header must end with a column named y");
  }
  std::vector<std::vector<double>> features;
  std::vector<double> labels;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw DataError(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(header.size()));
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto text = trim(cells[c]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw DataError(source + ": row " + std::to_string(row) + ", column " + std::to_string(c + 1) + " (" +
                        header[c] + "): not a number: '" + text + "'");
      }
      values.push_back(v);
    }
    labels.push_back(values.back());
    values.pop_back();
    features.push_back(std::move(values));
  }
  if (features.empty()) {
    throw DataError(source + ": no data rows");
  }
  try {
    return learners::LabeledDataset(features, labels);
  } catch (const Error& e) {
    throw DataError(source + ": " + e.what());
  }
}

learners::LabeledDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path);
  }
  return parse_csv(in, path);
}

}  // namespace abduction::cli
