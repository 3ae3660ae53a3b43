#include "abduction/cli/synth.hpp"

#include <random>
#include <sstream>

#include "abduction/cli/csv.hpp"

namespace abduction::cli {

learners::LabeledDataset two_blobs_1d(std::size_t m, std::uint64_t seed, double separation) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < m; ++i) {
    const int label = static_cast<int>(i % 2);
    x.push_back({label * separation + noise(rng)});
    y.push_back(label);
  }
  return {x, y, learners::LabelKind::binary01};
}

learners::LabeledDataset noisy_threshold(std::size_t m, std::uint64_t seed, double p) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution keep(p);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = unit(rng);
    const int clean = v > 0.5 ? 1 : 0;
    x.push_back({v});
    y.push_back(keep(rng) ? clean : 1 - clean);
  }
  return {x, y, learners::LabelKind::binary01};
}

learners::LabeledDataset xor2d(std::size_t m) {
  static const double corners[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = corners[i % 4];
    x.push_back({c[0], c[1]});
    y.push_back(c[0] != c[1] ? 1.0 : 0.0);
  }
  return {x, y, learners::LabelKind::binary01};
}

std::vector<std::string> generator_names() { return {"two_blobs_1d", "noisy_threshold", "xor2d"}; }

bool is_synth_spec(const std::string& spec) { return spec.rfind("synth:", 0) == 0; }

learners::LabeledDataset generate(const std::string& spec) {
  std::vector<std::string> parts;
  std::istringstream is(spec);
  std::string part;
  while (std::getline(is, part, ':')) {
    parts.push_back(part);
  }
  if (parts.size() != 4 || parts[0] != "synth") {
    throw DataError("synthetic data spec must look like synth:<generator>:<m>:<seed>, got '" + spec + "'");
  }
  std::size_t m = 0;
  std::uint64_t seed = 0;
  try {
    std::size_t used = 0;
    m = std::stoull(parts[2], &used);
    if (used != parts[2].size()) {
      throw std::invalid_argument(parts[2]);
    }
    seed = std::stoull(parts[3], &used);
    if (used != parts[3].size()) {
      throw std::invalid_argument(parts[3]);
    }
  } catch (const std::exception&) {
    throw DataError("synthetic data spec needs integer m and seed, got '" + spec + "'");
  }
  if (m == 0) {
    throw DataError("synthetic data needs m >= 1");
  }
  if (parts[1] == "two_blobs_1d") {
    return two_blobs_1d(m, seed);
  }
  if (parts[1] == "noisy_threshold") {
    return noisy_threshold(m, seed);
  }
  if (parts[1] == "xor2d") {
    return xor2d(m);
  }
  throw DataError("unknown generator '" + parts[1] + "' (two_blobs_1d, noisy_threshold, xor2d)");
}

learners::LabeledDataset load_data(const std::string& spec) {
  return is_synth_spec(spec) ? generate(spec) : load_csv(spec);
}

}  // namespace abduction::cli
