#include <random>

#include "doctest.h"
#include "gcp/axioms.hpp"
#include "gcp/ranking.hpp"
#include "support/test_support.hpp"

using namespace gcp;
using namespace gcp::test;

TEST_CASE("running-example tiers: o2 at 2, o1 at 3, the rest at 4") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    DominanceJudge judge(table);
    RankResult r = rank_cm(judge, brute_force_cm(judge));
    CHECK(r.rank[ds.object_index("o2")] == 2);
    CHECK(r.rank[ds.object_index("o1")] == 3);
    CHECK(r.rank[ds.object_index("o3")] == 4);
    CHECK(r.rank[ds.object_index("o4")] == 4);
    REQUIRE(r.tiers.size() == 3);
    CHECK(r.flat_order() ==
          std::vector<std::size_t>{1, 0, 2, 3});
}

TEST_CASE("a single user puts every maximal object at rank one") {
    Dataset ds = load_running_example();
    ds.users.resize(1);
    DegreeTable table = DegreeTable::compute(ds);
    DominanceJudge judge(table);
    RankResult r = rank_cm(judge, brute_force_cm(judge));
    for (std::size_t o : brute_force_cm(judge)) CHECK(r.rank[o] == 1);
}

TEST_CASE("threshold escalation equals the definition-level oracle") {
    std::mt19937_64 rng(107);
    InstanceConfig cfg;
    cfg.multi_valued = true;
    cfg.dag = true;
    for (int trial = 0; trial < 60; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        DominanceJudge judge(table);
        RankResult alg = rank_cm(judge, brute_force_cm(judge));
        RankResult def = rank_by_definition(judge);
        CHECK(alg.rank == def.rank);
    }
}

TEST_CASE("ranks form a weak order and rank one objects survive every threshold") {
    std::mt19937_64 rng(109);
    InstanceConfig cfg;
    for (int trial = 0; trial < 25; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        DominanceJudge judge(table);
        RankResult r = rank_cm(judge, brute_force_cm(judge));
        std::size_t users = ds.users.size();
        for (std::size_t o = 0; o < ds.objects.size(); ++o) {
            CHECK(r.rank[o] >= 1);
            CHECK(r.rank[o] <= users + 1);
        }
        for (std::size_t o = 0; o < ds.objects.size(); ++o) {
            if (r.rank[o] != 1) continue;
            for (int p = 10; p <= 100; p += 10) {
                auto pcm = brute_force_pcm(judge, Percent::of(p));
                CHECK(std::find(pcm.begin(), pcm.end(), o) != pcm.end());
            }
        }
    }
}

TEST_CASE("misery and pleasure disagree on a split profile") {
    // Object 0 scores (0.9, 0.1); object 1 scores (0.5, 0.5).
    std::vector<std::vector<std::vector<Degree>>> cells = {
        {{Degree(9, 10)}, {Degree(1, 10)}},
        {{Degree(1, 2)}, {Degree(1, 2)}},
    };
    DegreeTable table = DegreeTable::inject(2, 2, 1, cells);
    StrategySpec misery{Strategy::kMisery, 0.5};
    StrategySpec pleasure{Strategy::kPleasure, 0.5};
    CHECK(strategy_rank(table, misery).front() == 1);
    CHECK(strategy_rank(table, pleasure).front() == 0);
}

TEST_CASE("additive aggregation puts o2 first on the running example") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    std::vector<std::size_t> order = strategy_rank(table, {Strategy::kAdd, 0.5});
    CHECK(order.front() == static_cast<std::size_t>(ds.object_index("o2")));
}

TEST_CASE("approval counts scalars at or above the threshold") {
    std::vector<std::vector<std::vector<Degree>>> cells = {
        {{Degree(3, 5)}, {Degree(3, 5)}, {Degree(2, 5)}},  // scores 2
        {{Degree(1, 2)}, {Degree(1, 5)}, {Degree(1, 5)}},  // scores 1
    };
    DegreeTable table = DegreeTable::inject(2, 3, 1, cells);
    std::vector<std::size_t> order = strategy_rank(table, {Strategy::kApproval, 0.5});
    CHECK(order == std::vector<std::size_t>{0, 1});
}

TEST_CASE("multiplication with a zero degree yields zero") {
    std::vector<std::vector<std::vector<Degree>>> cells = {
        {{Degree(1, 1)}, {Degree(0, 1)}},
        {{Degree(1, 4)}, {Degree(1, 4)}},
    };
    DegreeTable table = DegreeTable::inject(2, 2, 1, cells);
    CHECK(strategy_rank(table, {Strategy::kMult, 0.5}).front() == 1);
}

TEST_CASE("every strategy produces a full permutation") {
    std::mt19937_64 rng(113);
    InstanceConfig cfg;
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        for (const auto& [name, s] : strategy_catalog()) {
            std::vector<std::size_t> order = strategy_rank(table, {s, 0.5});
            CHECK(order.size() == ds.objects.size());
            std::vector<std::size_t> check = order;
            std::sort(check.begin(), check.end());
            for (std::size_t i = 0; i < check.size(); ++i) CHECK(check[i] == i);
        }
    }
}

TEST_CASE("precision at k") {
    std::vector<std::size_t> a{1, 2, 3, 4};
    std::vector<std::size_t> b{1, 2, 3, 4};
    CHECK(precision_at_k(a, b, 4) == doctest::Approx(1.0));
    CHECK(precision_at_k(a, {5, 6, 7, 8}, 4) == doctest::Approx(0.0));
    // Two common elements among the top ten.
    std::vector<std::size_t> r, t;
    for (std::size_t i = 0; i < 10; ++i) {
        r.push_back(i);
        t.push_back(i < 2 ? i : i + 100);
    }
    CHECK(precision_at_k(r, t, 10) == doctest::Approx(0.2));
    // Short lists still divide by k.
    CHECK(precision_at_k({1}, {1}, 2) == doctest::Approx(0.5));
}

TEST_CASE("footrule distance: identical, disjoint, reversed") {
    std::vector<std::size_t> a{1, 2, 3};
    CHECK(spearman_footrule(a, a, 3) == doctest::Approx(0.0));
    CHECK(spearman_footrule(a, {7, 8, 9}, 3) == doctest::Approx(1.0));
    // Reversed two-element lists: raw displacement 2 out of the
    // disjoint-list maximum k(k+1) = 6.
    CHECK(spearman_footrule({1, 2}, {2, 1}, 2) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(spearman_footrule({}, a, 2), std::invalid_argument);
}

TEST_CASE("footrule stays within the unit range and vanishes only on agreement") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 6;
        std::vector<std::size_t> a(n), b(n);
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), 0);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        std::size_t k = 1 + bounded_rand(rng, n);
        double f = spearman_footrule(a, b, k);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        bool same_prefix = std::equal(a.begin(), a.begin() + k, b.begin());
        if (same_prefix) CHECK(f == doctest::Approx(0.0));
        if (f == 0.0) {
            // Zero distance forces identical top-k membership and order.
            CHECK(std::vector<std::size_t>(a.begin(), a.begin() + k) ==
                  std::vector<std::size_t>(b.begin(), b.begin() + k));
        }
    }
}

TEST_CASE("axiom suites hold on a quick pass") {
    AxiomConfig cfg;
    cfg.trials = 120;
    AxiomReport report = axiom_suite(cfg);
    REQUIRE(report.suites.size() == 8);
    for (const auto& s : report.suites) {
        INFO(s.name);
        CHECK(s.violations.empty());
    }
}
