// Single-run experiment driver: executes a named algorithm over a
// dataset with counters attached and reports the three effort metrics.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcp/ranking.hpp"
#include "gcp/report.hpp"
#include "gcp/rtree.hpp"
#include "gcp/skyline.hpp"
#include "gcp/spatial.hpp"

namespace gcp {

struct ExperimentParams {
    std::string algorithm = "ind";
    Percent p{100, 1};
    MatchOptions match;
    StrictnessMode strictness = StrictnessMode::kStandard;
    SkylineConfig skyline;
    RTreeConfig rtree;
    std::uint64_t seed = 0;  // echoed into the report
};

struct ExperimentOutput {
    RunReport report;
    // Set results in catalog order; ranked results in rank order.
    std::vector<std::size_t> result;
    std::optional<RankResult> ranks;
};

// Known algorithm ids: bsl-bnl, bsl-sfs, bsl-bbs, ind, brute,
// p-bsl-bnl, p-bsl-sfs, p-bsl-bbs, p-ind, p-brute, rank-cm,
// strategy:<name>.
bool algorithm_known(const std::string& name);

// Runs one algorithm.  A prebuilt index may be passed for the
// index-based algorithms; otherwise one is built outside the measured
// window (construction is a one-time cost amortized across runs).
ExperimentOutput run_experiment(const Dataset& ds, const ExperimentParams& params,
                                const RTree* prebuilt = nullptr);

// Same runs repeated; counters must agree across repeats, wall time is
// averaged.
ExperimentOutput run_averaged(const Dataset& ds, const ExperimentParams& params, std::size_t runs,
                              const RTree* prebuilt = nullptr);

}  // namespace gcp
