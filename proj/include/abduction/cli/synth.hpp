#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "abduction/learners/dataset.hpp"

namespace abduction::cli {

/// Class 0 ~ N(0, 1), class 1 ~ N(separation, 1), classes alternating.
learners::LabeledDataset two_blobs_1d(std::size_t m, std::uint64_t seed, double separation = 4.0);

/// x ~ U(0, 1), label [x > 0.5] kept with probability p and flipped otherwise.
learners::LabeledDataset noisy_threshold(std::size_t m, std::uint64_t seed, double p = 0.8);

/// Corners of the unit square cycled in the order (0,0) (0,1) (1,0) (1,1),
/// labeled by XOR.
learners::LabeledDataset xor2d(std::size_t m);

std::vector<std::string> generator_names();

/// "synth:<generator>:<m>:<seed>"
bool is_synth_spec(const std::string& spec);
learners::LabeledDataset generate(const std::string& spec);

/// Path or synth spec.
learners::LabeledDataset load_data(const std::string& spec);

}  // namespace abduction::cli
