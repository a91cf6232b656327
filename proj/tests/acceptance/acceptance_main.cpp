// Acceptance suite: one check per release criterion, each printed as a
// pass/fail line with its measurements.  Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gcp/axioms.hpp"
#include "gcp/dataset_io.hpp"
#include "gcp/experiment.hpp"
#include "gcp/ranking.hpp"
#include "gcp/skyline.hpp"
#include "gcp/spatial.hpp"
#include "gcp/synthetic.hpp"
#include "support/test_support.hpp"

using namespace gcp;
using namespace gcp::test;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::vector<std::size_t> ids(const Dataset& ds, std::initializer_list<const char*> names) {
    std::vector<std::size_t> out;
    for (const char* n : names) out.push_back(static_cast<std::size_t>(ds.object_index(n)));
    return out;
}

// --- criterion 1: running-example golden values -----------------------

Outcome criterion_golden() {
    Outcome out;
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);

    auto deg = [](std::int64_t n, std::int64_t d) { return Degree(n, d); };
    const std::vector<std::vector<std::vector<Degree>>> expected = {
        {{deg(1, 2), deg(1, 2), deg(1, 6), deg(1, 1), deg(1, 1)},
         {deg(0, 1), deg(1, 1), deg(1, 1), deg(1, 1), deg(0, 1)},
         {deg(0, 1), deg(1, 1), deg(0, 1), deg(1, 1), deg(1, 1)}},
        {{deg(1, 4), deg(0, 1), deg(0, 1), deg(0, 1), deg(0, 1)},
         {deg(1, 1), deg(1, 1), deg(1, 1), deg(1, 1), deg(1, 1)},
         {deg(1, 2), deg(1, 1), deg(1, 1), deg(1, 1), deg(1, 1)}},
        {{deg(0, 1), deg(1, 2), deg(0, 1), deg(0, 1), deg(0, 1)},
         {deg(0, 1), deg(1, 1), deg(1, 1), deg(1, 1), deg(0, 1)},
         {deg(0, 1), deg(1, 1), deg(0, 1), deg(1, 1), deg(1, 1)}},
        {{deg(0, 1), deg(0, 1), deg(0, 1), deg(0, 1), deg(0, 1)},
         {deg(0, 1), deg(1, 1), deg(1, 1), deg(1, 1), deg(0, 1)},
         {deg(0, 1), deg(1, 1), deg(0, 1), deg(1, 1), deg(1, 1)}},
    };
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            auto got = table.degrees(i, j);
            for (std::size_t k = 0; k < 5; ++k) {
                out.require(got[k] == expected[i][j][k], "matching vector mismatch");
                out.require(std::abs(got[k].value() - expected[i][j][k].value()) <= 1e-12,
                            "float drift beyond 1e-12");
            }
        }
    }

    DominanceJudge judge(table);
    out.require(brute_force_cm(judge) == ids(ds, {"o1", "o2"}), "maximal set");
    RTree tree = RTree::build(ds, {});
    IndResult via_index = p_ind(tree, ds, Percent::of(60), nullptr);
    std::sort(via_index.cm.begin(), via_index.cm.end());
    out.require(via_index.cm == ids(ds, {"o1", "o2"}), "index search maximal set");
    out.require(via_index.pcm == ids(ds, {"o2"}), "60-relaxed set");
    out.require(brute_force_pcm(judge, Percent::of(60)) == ids(ds, {"o2"}), "60-relaxed oracle");
    out.require(brute_force_pcm(judge, Percent::of(30)).empty(), "30-relaxed set");
    RankResult ranks = rank_cm(judge, brute_force_cm(judge));
    out.require(ranks.rank[ds.object_index("o2")] == 2, "rank of o2");
    out.require(ranks.rank[ds.object_index("o1")] == 3, "rank of o1");
    out.require(ranks.rank[ds.object_index("o3")] == 4, "rank of o3");
    out.require(ranks.rank[ds.object_index("o4")] == 4, "rank of o4");
    return out;
}

// --- criteria 2 and 6: oracle equivalence and containment laws --------

Outcome criterion_oracles(Outcome& containment) {
    Outcome out;
    std::mt19937_64 rng(20250810);
    const std::vector<int> p_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    for (int trial = 0; trial < 200; ++trial) {
        InstanceConfig cfg;
        cfg.max_objects = trial % 5 == 0 ? 500 : 60;
        cfg.max_users = 8;
        cfg.max_attrs = 4;
        cfg.multi_valued = trial % 2 == 1;
        cfg.dag = trial % 3 == 0;
        cfg.hierarchy_nodes = 60;
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        DominanceJudge judge(table);
        SkylineConfig scfg;
        RTreeConfig rcfg;
        rcfg.capacity = 8;
        RTree tree = RTree::build(ds, {}, rcfg);

        std::vector<std::size_t> expect = brute_force_cm(judge);
        IndResult via_index = ind(tree, ds, nullptr);
        std::sort(via_index.cm.begin(), via_index.cm.end());
        out.require(via_index.cm == expect, "ind != brute force");
        out.require(bsl(judge, InnerSkyline::kBnl, scfg) == expect, "bsl-bnl != brute force");
        out.require(bsl(judge, InnerSkyline::kSfs, scfg) == expect, "bsl-sfs != brute force");
        out.require(bsl(judge, InnerSkyline::kBbs, scfg) == expect, "bsl-bbs != brute force");

        std::vector<std::size_t> prev;
        for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
            Percent p = Percent::of(p_values[pi]);
            std::vector<std::size_t> oracle = brute_force_pcm(judge, p);
            IndResult relaxed = p_ind(tree, ds, p, nullptr);
            std::sort(relaxed.pcm.begin(), relaxed.pcm.end());
            out.require(relaxed.pcm == oracle, "p-ind != oracle");
            out.require(p_bsl(judge, p, InnerSkyline::kBnl, scfg) == oracle, "p-bsl != oracle");
            containment.require(
                std::includes(expect.begin(), expect.end(), oracle.begin(), oracle.end()),
                "relaxed set escapes the maximal set");
            if (pi > 0) {
                containment.require(
                    std::includes(oracle.begin(), oracle.end(), prev.begin(), prev.end()),
                    "relaxed set not monotone in p");
            }
            prev = std::move(oracle);
        }

        out.require(rank_cm(judge, expect).rank == rank_by_definition(judge).rank,
                    "rank != definition oracle");
        if (!out.pass) break;
    }
    return out;
}

// --- criterion 3: interval arithmetic against the leaf-set oracle -----

Outcome criterion_intervals() {
    Outcome out;
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 24; ++trial) {
        HierarchyGenConfig cfg;
        cfg.max_nodes = 200;
        cfg.dag = trial % 2 == 1;
        cfg.extra_edges = 1 + trial % 5;
        Hierarchy h = parse_hierarchy(random_hierarchy_doc(rng, cfg), "acc");
        IntervalLabeling lab = label_hierarchy(h);
        for (std::size_t a = 0; a < h.nodes.size() && out.pass; ++a) {
            std::set<int> sa = leaf_set(h, static_cast<int>(a));
            for (std::size_t b = 0; b < h.nodes.size(); ++b) {
                std::set<int> sb = leaf_set(h, static_cast<int>(b));
                std::vector<int> inter;
                std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                      std::back_inserter(inter));
                SetCards c = set_cardinalities(lab.intervals(static_cast<int>(a)),
                                               lab.intervals(static_cast<int>(b)));
                bool same = c.x_size == static_cast<std::int64_t>(sa.size()) &&
                            c.y_size == static_cast<std::int64_t>(sb.size()) &&
                            c.inter == static_cast<std::int64_t>(inter.size()) &&
                            c.uni == static_cast<std::int64_t>(sa.size() + sb.size() -
                                                               inter.size());
                out.require(same, "cardinality identity violated");
                if (!out.pass) break;
            }
        }
    }
    return out;
}

// --- criterion 4: bound soundness and prune safety ---------------------

Outcome criterion_bounds() {
    Outcome out;
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 12; ++trial) {
        InstanceConfig cfg;
        cfg.max_objects = 120;
        cfg.multi_valued = trial % 2 == 1;
        cfg.dag = trial % 3 == 0;
        Dataset ds = random_instance(rng, cfg);
        RTreeConfig rcfg;
        rcfg.capacity = 6;
        rcfg.build =
            trial % 4 == 0 ? RTreeConfig::Build::kInsert : RTreeConfig::Build::kBulkLoad;
        RTree full = RTree::build(ds, {}, rcfg);
        out.require(audit_bounds(full, ds).clean(), "full-space bound violation");
        if (ds.dims() > 1) {
            RTree sub = RTree::build(ds, {0}, rcfg);
            out.require(audit_bounds(sub, ds).clean(), "subspace bound violation");
            IndResult via_sub = ind(sub, ds, nullptr);
            IndResult via_full = ind(full, ds, nullptr);
            out.require(sorted(via_sub.cm) == sorted(via_full.cm), "subspace result differs");
        }
        IndOptions with, without;
        without.prune = false;
        out.require(sorted(ind(full, ds, nullptr, with).cm) ==
                        sorted(ind(full, ds, nullptr, without).cm),
                    "pruning changed the result");
    }
    return out;
}

// --- criterion 5: performance trend at desk scale -----------------------

Outcome criterion_performance() {
    Outcome out;
    SyntheticConfig cfg;
    cfg.num_objects = 100'000;
    cfg.num_attributes = 4;
    cfg.group_size = 8;
    cfg.hierarchy_height = 8;
    cfg.object_level = 1;
    cfg.user_level = 2;
    cfg.seed = 5;
    Dataset ds = gen_synthetic(cfg);
    RTree tree = RTree::build(ds, {});

    auto run3 = [&](const std::string& algo) {
        ExperimentParams params;
        params.algorithm = algo;
        params.seed = cfg.seed;
        return run_averaged(ds, params, 3, &tree);
    };
    ExperimentOutput via_index = run3("ind");
    ExperimentOutput bnl = run3("bsl-bnl");
    ExperimentOutput sfs = run3("bsl-sfs");
    ExperimentOutput bbs = run3("bsl-bbs");
    std::uint64_t best_bsl_io =
        std::min({bnl.report.io_reads, sfs.report.io_reads, bbs.report.io_reads});

    std::ostringstream os;
    os << "ind io=" << via_index.report.io_reads << " best bsl io=" << best_bsl_io
       << " (need <= 1/5); ind wall=" << via_index.report.wall_ms
       << "ms bnl wall=" << bnl.report.wall_ms << "ms (need <= 1/3)";
    out.detail = os.str();
    out.require(via_index.result == bnl.result && bnl.result == sfs.result &&
                    sfs.result == bbs.result,
                "result sets differ");
    out.require(5 * via_index.report.io_reads <= best_bsl_io, "io ratio above 1/5");
    out.require(3.0 * via_index.report.wall_ms <= bnl.report.wall_ms, "wall ratio above 1/3");
    return out;
}

// --- criterion 7: ranking axiom suites ----------------------------------

Outcome criterion_axioms() {
    Outcome out;
    AxiomConfig cfg;
    cfg.trials = 1000;
    cfg.seed = 99;
    AxiomReport report = axiom_suite(cfg);
    for (const auto& s : report.suites) {
        std::ostringstream os;
        os << s.name << ": " << s.violations.size() << " violations in " << s.trials << " trials";
        out.require(s.violations.empty(), os.str());
    }
    return out;
}

// --- criterion 8: evaluation metrics and the strategy report ------------

Outcome criterion_metrics() {
    Outcome out;
    std::vector<std::size_t> a{1, 2, 3, 4, 5};
    std::vector<std::size_t> b{6, 7, 8, 9, 10};
    out.require(precision_at_k(a, a, 5) == 1.0, "identical precision != 1");
    out.require(spearman_footrule(a, a, 5) == 0.0, "identical footrule != 0");
    out.require(precision_at_k(a, b, 5) == 0.0, "disjoint precision != 0");
    out.require(spearman_footrule(a, b, 5) == 1.0, "disjoint footrule != 1");

    Dataset ds = load_running_example();
    std::vector<std::size_t> truth =
        load_ranked_list(ds, read_file(fixtures_dir() + "/running/truth.txt"), "truth");
    DegreeTable table = DegreeTable::compute(ds);
    DominanceJudge judge(table);
    std::ostringstream report;
    report << "strategy,group_size,k,precision,footrule\n";
    std::size_t rows = 0;
    auto emit = [&](const std::string& name, const std::vector<std::size_t>& order) {
        for (std::size_t k : {2, 4}) {
            report << name << ',' << ds.users.size() << ',' << k << ','
                   << precision_at_k(order, truth, k) << ','
                   << spearman_footrule(order, truth, k) << '\n';
            ++rows;
        }
    };
    emit("rank-cm", rank_cm(judge, brute_force_cm(judge)).flat_order());
    for (const auto& [name, strat] : strategy_catalog()) {
        emit(name, strategy_rank(table, {strat, 0.5}));
    }
    out.require(rows == 20, "report incomplete");
    out.require(report.str().find("rank-cm,3,2,1,0") != std::string::npos,
                "fixture ranking should match its ground truth");
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> fn;
    };
    Outcome containment;  // filled by the oracle criterion

    std::vector<Criterion> criteria = {
        {"running-example golden values", 1.0, criterion_golden},
        {"oracle equivalence on 200 random instances", 300.0,
         [&] { return criterion_oracles(containment); }},
        {"interval arithmetic vs leaf-set oracle", 30.0, criterion_intervals},
        {"bound soundness and prune safety", 120.0, criterion_bounds},
        {"performance trend at 100k objects", 900.0, criterion_performance},
        {"containment and monotonicity of relaxed sets", 1.0, [&] { return containment; }},
        {"ranking axiom suites (1000 trials each)", 180.0, criterion_axioms},
        {"evaluation metrics and strategy report", 30.0, criterion_metrics},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome out = criteria[i].fn();
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        bool in_budget = secs <= criteria[i].budget_s;
        bool pass = out.pass && in_budget;
        std::printf("[%zu/8] %-48s %s (%.2fs)\n", i + 1, criteria[i].name,
                    pass ? "PASS" : "FAIL", secs);
        if (!out.detail.empty()) std::printf("      %s\n", out.detail.c_str());
        if (!in_budget) std::printf("      exceeded the %.0fs budget\n", criteria[i].budget_s);
        if (!pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
