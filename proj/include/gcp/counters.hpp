#pragma once

#include <cstdint>

namespace gcp {

// Per-run effort metrics.  A run context owns exactly one instance;
// values only grow while a run executes.
struct Counters {
    std::uint64_t dominance_checks = 0;
    std::uint64_t io_reads = 0;
};

}  // namespace gcp
