#include "gcp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace gcp {

namespace {

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names = {
        "bsl-bnl", "bsl-sfs", "bsl-bbs", "ind",     "brute",  "p-bsl-bnl",
        "p-bsl-sfs", "p-bsl-bbs", "p-ind", "p-brute", "rank-cm",
    };
    return names;
}

InnerSkyline inner_from_suffix(const std::string& name) {
    if (name.ends_with("bnl")) return InnerSkyline::kBnl;
    if (name.ends_with("sfs")) return InnerSkyline::kSfs;
    return InnerSkyline::kBbs;
}

}  // namespace

bool algorithm_known(const std::string& name) {
    if (name.rfind("strategy:", 0) == 0) {
        try {
            strategy_from_name(name.substr(9));
            return true;
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    const auto& names = known_algorithms();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ExperimentOutput run_experiment(const Dataset& ds, const ExperimentParams& params,
                                const RTree* prebuilt) {
    if (!algorithm_known(params.algorithm)) {
        throw std::invalid_argument("unknown algorithm '" + params.algorithm + "'");
    }
    const std::string& algo = params.algorithm;
    bool needs_tree = algo == "ind" || algo == "p-ind";

    RTree local_tree;
    const RTree* tree = prebuilt;
    if (needs_tree && !tree) {
        local_tree = RTree::build(ds, {}, params.rtree);
        tree = &local_tree;
    }

    ExperimentOutput out;
    Counters counters;
    auto t0 = std::chrono::steady_clock::now();

    if (algo == "ind" || algo == "p-ind") {
        IndOptions opts;
        opts.match = params.match;
        opts.strictness = params.strictness;
        IndResult res = algo == "ind" ? ind(*tree, ds, &counters, opts)
                                      : p_ind(*tree, ds, params.p, &counters, opts);
        out.result = algo == "ind" ? res.cm : res.pcm;
        std::sort(out.result.begin(), out.result.end());
    } else {
        DegreeTable table = DegreeTable::compute(ds, params.match);
        DominanceJudge judge(table, &counters, &ds, params.strictness);
        if (algo == "brute") {
            out.result = brute_force_cm(judge);
        } else if (algo == "p-brute") {
            out.result = brute_force_pcm(judge, params.p);
        } else if (algo.rfind("strategy:", 0) == 0) {
            StrategySpec spec;
            spec.strategy = strategy_from_name(algo.substr(9));
            out.result = strategy_rank(table, spec);
        } else if (algo == "rank-cm") {
            std::vector<std::size_t> cm = bsl(judge, InnerSkyline::kBnl, params.skyline);
            out.ranks = rank_cm(judge, cm);
            out.result = out.ranks->flat_order();
        } else if (algo.rfind("p-bsl-", 0) == 0) {
            out.result = p_bsl(judge, params.p, inner_from_suffix(algo), params.skyline);
        } else {
            out.result = bsl(judge, inner_from_suffix(algo), params.skyline);
        }
    }

    auto t1 = std::chrono::steady_clock::now();
    out.report.algorithm = algo;
    out.report.io_reads = counters.io_reads;
    out.report.dominance_checks = counters.dominance_checks;
    out.report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.report.result_size = out.result.size();
    out.report.seed = params.seed;
    return out;
}

ExperimentOutput run_averaged(const Dataset& ds, const ExperimentParams& params, std::size_t runs,
                              const RTree* prebuilt) {
    if (runs == 0) throw std::invalid_argument("runs must be positive");
    RTree local_tree;
    const RTree* tree = prebuilt;
    bool needs_tree = params.algorithm == "ind" || params.algorithm == "p-ind";
    if (needs_tree && !tree) {
        local_tree = RTree::build(ds, {}, params.rtree);
        tree = &local_tree;
    }
    ExperimentOutput first = run_experiment(ds, params, tree);
    double wall_total = first.report.wall_ms;
    for (std::size_t r = 1; r < runs; ++r) {
        ExperimentOutput again = run_experiment(ds, params, tree);
        if (again.report.io_reads != first.report.io_reads ||
            again.report.dominance_checks != first.report.dominance_checks ||
            again.result != first.result) {
            throw std::runtime_error("nondeterministic run for '" + params.algorithm + "'");
        }
        wall_total += again.report.wall_ms;
    }
    first.report.wall_ms = wall_total / static_cast<double>(runs);
    first.report.runs = runs;
    return first;
}

}  // namespace gcp
