// Synthetic workload generation: d identical complete binary attribute
// hierarchies of a given height; object values drawn uniformly from one
// hierarchy level, user values from another (level 1 = leaves).
// Deterministic under the seed.

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gcp/model.hpp"

namespace gcp {

struct SyntheticConfig {
    std::size_t num_objects = 500'000;
    std::size_t num_attributes = 4;
    std::size_t group_size = 8;
    std::size_t hierarchy_height = 8;  // leaves = 2^height
    std::size_t object_level = 1;
    std::size_t user_level = 2;
    std::uint64_t seed = 1;
};

Dataset gen_synthetic(const SyntheticConfig& cfg);

// Portable bounded draw on top of the standard engine, so identical
// seeds give identical datasets on every platform.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace gcp
