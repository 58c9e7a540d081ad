#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgesim/dl/neural_network.hpp"

namespace edgesim::dl {

// Versioned flat binary model listing: magic, version, input shape, then per
// layer (kind tag, configuration, parameter values in row-major order). All
// integers and doubles are little-endian, so bytes and digests are identical
// across platforms.
std::vector<std::uint8_t> serialize_model(const NeuralNetwork& net);

// Throws std::invalid_argument on malformed bytes.
NeuralNetwork deserialize_model(std::span<const std::uint8_t> bytes);

// FNV-1a over the serialized bytes; used for trace identity.
std::uint64_t model_digest(const NeuralNetwork& net);

}  // namespace edgesim::dl
