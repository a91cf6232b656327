#include <random>

#include "doctest.h"
#include "gcp/skyline.hpp"
#include "gcp/synthetic.hpp"
#include "support/test_support.hpp"

using namespace gcp;
using namespace gcp::test;

namespace {

std::vector<std::size_t> ids_to_indices(const Dataset& ds, std::initializer_list<const char*> ids) {
    std::vector<std::size_t> out;
    for (const char* id : ids) out.push_back(static_cast<std::size_t>(ds.object_index(id)));
    return out;
}

}  // namespace

TEST_CASE("all three inner algorithms find the running-example maximal set") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    DominanceJudge judge(table);
    SkylineConfig cfg;
    for (auto inner : {InnerSkyline::kBnl, InnerSkyline::kSfs, InnerSkyline::kBbs}) {
        CHECK(bsl(judge, inner, cfg) == ids_to_indices(ds, {"o1", "o2"}));
    }
}

TEST_CASE("singleton input is its own skyline") {
    std::vector<std::vector<std::vector<Degree>>> cells = {{{Degree(1, 3)}}};
    DegreeTable table = DegreeTable::inject(1, 1, 1, cells);
    DominanceJudge judge(table);
    SkylineConfig cfg;
    for (auto inner : {InnerSkyline::kBnl, InnerSkyline::kSfs, InnerSkyline::kBbs}) {
        CHECK(bsl(judge, inner, cfg) == std::vector<std::size_t>{0});
    }
}

TEST_CASE("sort-first examines o2 before o1 and keeps the first record") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    // Norm sums from the degree table: o2 = 39/4, o1 = 55/6.
    CHECK(table.norm_sum(1) == doctest::Approx(9.75).epsilon(1e-12));
    CHECK(table.norm_sum(0) == doctest::Approx(55.0 / 6.0).epsilon(1e-12));
    DominanceJudge judge(table);
    SkylineConfig cfg;
    std::vector<std::size_t> sky = sfs_skyline(judge, cfg);
    REQUIRE(!sky.empty());
    // The top-key record can have no earlier dominator.
    CHECK(sky.front() == static_cast<std::size_t>(ds.object_index("o2")));
}

TEST_CASE("inner algorithms agree with each other and the oracle") {
    std::mt19937_64 rng(67);
    InstanceConfig cfg;
    cfg.multi_valued = true;
    cfg.dag = true;
    SkylineConfig scfg;
    for (int trial = 0; trial < 60; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        DominanceJudge judge(table);
        std::vector<std::size_t> expect = sorted(brute_force_cm(judge));
        CHECK(bsl(judge, InnerSkyline::kBnl, scfg) == expect);
        CHECK(bsl(judge, InnerSkyline::kSfs, scfg) == expect);
        CHECK(bsl(judge, InnerSkyline::kBbs, scfg) == expect);
    }
}

TEST_CASE("tiny windows force extra passes without changing the result") {
    std::mt19937_64 rng(71);
    InstanceConfig cfg;
    cfg.max_objects = 60;
    SkylineConfig small;
    small.bnl_window_records = 3;
    SkylineConfig big;
    for (int trial = 0; trial < 20; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        Counters c_small, c_big;
        DominanceJudge judge_small(table, &c_small);
        DominanceJudge judge_big(table, &c_big);
        CHECK(bsl(judge_small, InnerSkyline::kBnl, small) ==
              bsl(judge_big, InnerSkyline::kBnl, big));
        CHECK(c_small.io_reads >= c_big.io_reads);
    }
}

TEST_CASE("record file pages scale with the group size") {
    PagingConfig paging;
    CHECK(paging.records_per_page(1) == 100);
    CHECK(paging.records_per_page(8) == 12);
    CHECK(paging.records_per_page(1000) == 1);  // never zero
    CHECK(paging.pages_for(1000, 8) == 84);
}

TEST_CASE("the block-nested variant reads the fewest pages at default settings") {
    SyntheticConfig scfg;
    scfg.num_objects = 3000;
    scfg.num_attributes = 4;
    scfg.group_size = 8;
    scfg.hierarchy_height = 8;
    scfg.seed = 9;
    Dataset ds = gen_synthetic(scfg);
    DegreeTable table = DegreeTable::compute(ds);
    SkylineConfig cfg;
    auto run = [&](InnerSkyline inner) {
        Counters counters;
        DominanceJudge judge(table, &counters);
        bsl(judge, inner, cfg);
        return counters.io_reads;
    };
    std::uint64_t bnl = run(InnerSkyline::kBnl);
    std::uint64_t sfs = run(InnerSkyline::kSfs);
    std::uint64_t bbs = run(InnerSkyline::kBbs);
    CHECK(bnl <= sfs);
    CHECK(bnl <= bbs);
}

TEST_CASE("p-filtering after the skyline matches the oracle") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    DominanceJudge judge(table);
    SkylineConfig cfg;
    CHECK(p_bsl(judge, Percent::of(60), InnerSkyline::kBnl, cfg) == ids_to_indices(ds, {"o2"}));
    CHECK(p_bsl(judge, Percent::of(100), InnerSkyline::kSfs, cfg) ==
          ids_to_indices(ds, {"o1", "o2"}));

    std::mt19937_64 rng(73);
    InstanceConfig icfg;
    icfg.multi_valued = true;
    for (int trial = 0; trial < 30; ++trial) {
        Dataset rds = random_instance(rng, icfg);
        DegreeTable rtable = DegreeTable::compute(rds);
        DominanceJudge rjudge(rtable);
        for (int p = 10; p <= 90; p += 20) {
            CHECK(p_bsl(rjudge, Percent::of(p), InnerSkyline::kBnl, cfg) ==
                  brute_force_pcm(rjudge, Percent::of(p)));
        }
    }
}
