// Randomized property suites for the tier ranking, phrased as the
// testable statements behind the usual voting-theoretic criteria:
// majority, independence of irrelevant alternatives, clone
// independence, anonymity, monotonicity, participation, resolvability
// and neutrality.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcp/ranking.hpp"

namespace gcp {

struct AxiomConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::size_t max_objects = 16;
    std::size_t max_users = 5;
    std::size_t max_dims = 3;
};

struct AxiomSuiteResult {
    std::string name;
    std::size_t trials = 0;
    // Seeds reproducing each violation (empty when the suite held).
    std::vector<std::uint64_t> violations;
};

struct AxiomReport {
    std::vector<AxiomSuiteResult> suites;

    bool clean() const {
        for (const auto& s : suites) {
            if (!s.violations.empty()) return false;
        }
        return true;
    }
};

AxiomReport axiom_suite(const AxiomConfig& cfg);

}  // namespace gcp
