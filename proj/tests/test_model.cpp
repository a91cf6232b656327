#include <random>

#include "doctest.h"
#include "gcp/model.hpp"
#include "support/test_support.hpp"

using namespace gcp;
using namespace gcp::test;

namespace {

Degree deg(std::int64_t n, std::int64_t d) { return Degree(n, d); }

// Table 4 of the running example, in fixture attribute order
// (Cuisine, Attire, Place, Price, Parking); rows o1..o4, columns u1..u3.
const std::vector<std::vector<std::vector<Degree>>> kExpected = {
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

}  // namespace

TEST_CASE("business casual against casual matches one half") {
    Dataset ds = load_running_example();
    CHECK(matching_degree(ds, ds.objects[0], ds.users[0], 1) == deg(1, 2));
}

TEST_CASE("indifferent attributes match fully") {
    Dataset ds = load_running_example();
    // u2 is indifferent on Attire.
    CHECK(matching_degree(ds, ds.objects[0], ds.users[1], 1) == Degree::one());
}

TEST_CASE("identical single values match fully under all three functions") {
    Dataset ds = load_running_example();
    for (auto f : {SimilarityFunction::jaccard(), SimilarityFunction::overlap(),
                   SimilarityFunction::dice()}) {
        MatchOptions opts;
        opts.similarity = f;
        // o1.Parking = Street, u1.Parking = Street.
        CHECK(matching_degree(ds, ds.objects[0], ds.users[0], 4, opts) == Degree::one());
    }
}

TEST_CASE("multi-valued preference takes the best pair") {
    Dataset ds = load_running_example();
    // u2.Cuisine = {French, Chinese}; o2.Cuisine = French.
    CHECK(matching_degree(ds, ds.objects[1], ds.users[1], 0) == Degree::one());
}

TEST_CASE("the full running-example degree table is exact") {
    Dataset ds = load_running_example();
    DegreeTable table = DegreeTable::compute(ds);
    REQUIRE(table.num_objects() == 4);
    REQUIRE(table.num_users() == 3);
    REQUIRE(table.dims() == 5);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            auto got = table.degrees(i, j);
            for (std::size_t k = 0; k < 5; ++k) {
                INFO("object ", i + 1, " user ", j + 1, " attr ", k);
                CHECK(got[k] == kExpected[i][j][k]);
                CHECK(got[k].value() ==
                      doctest::Approx(kExpected[i][j][k].value()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("matching vectors agree with per-degree recomputation") {
    std::mt19937_64 rng(5);
    InstanceConfig cfg;
    cfg.multi_valued = true;
    cfg.dag = true;
    for (int trial = 0; trial < 20; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        DegreeTable table = DegreeTable::compute(ds);
        for (std::size_t i = 0; i < ds.objects.size(); ++i) {
            for (std::size_t j = 0; j < ds.users.size(); ++j) {
                MatchingVector mv = matching_vector(ds, ds.objects[i], ds.users[j]);
                auto cell = table.degrees(i, j);
                for (std::size_t k = 0; k < ds.dims(); ++k) CHECK(cell[k] == mv.degrees[k]);
                CHECK(table.norm(i, j) == doctest::Approx(mv.norm).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("empty user set yields a table with zero columns") {
    Dataset ds = load_running_example();
    ds.users.clear();
    DegreeTable table = DegreeTable::compute(ds);
    CHECK(table.num_users() == 0);
    CHECK(table.num_objects() == 4);
}

TEST_CASE("degrees stay in the unit range; jaccard never beats overlap or dice") {
    std::mt19937_64 rng(17);
    InstanceConfig cfg;
    cfg.multi_valued = true;
    cfg.dag = true;
    for (int trial = 0; trial < 25; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        MatchOptions jac, ovl, dic;
        ovl.similarity = SimilarityFunction::overlap();
        dic.similarity = SimilarityFunction::dice();
        for (const auto& o : ds.objects) {
            for (const auto& u : ds.users) {
                for (std::size_t k = 0; k < ds.dims(); ++k) {
                    Degree j = matching_degree(ds, o, u, k, jac);
                    Degree v = matching_degree(ds, o, u, k, ovl);
                    Degree d = matching_degree(ds, o, u, k, dic);
                    CHECK(Degree::zero() <= j);
                    CHECK(j <= Degree::one());
                    CHECK(v <= Degree::one());
                    CHECK(d <= Degree::one());
                    CHECK(j <= v);
                    CHECK(j <= d);
                }
            }
        }
    }
}

TEST_CASE("multi-valued degree dominates every single-pair degree") {
    std::mt19937_64 rng(29);
    InstanceConfig cfg;
    cfg.multi_valued = true;
    for (int trial = 0; trial < 15; ++trial) {
        Dataset ds = random_instance(rng, cfg);
        for (const auto& o : ds.objects) {
            for (const auto& u : ds.users) {
                for (std::size_t k = 0; k < ds.dims(); ++k) {
                    if (u.indifferent(k)) continue;
                    Degree full = matching_degree(ds, o, u, k);
                    for (int ov : o.values[k]) {
                        for (int uv : *u.values[k]) {
                            ObjectRecord single = o;
                            single.values[k] = {ov};
                            UserPrefs su = u;
                            su.values[k] = std::vector<int>{uv};
                            CHECK(matching_degree(ds, single, su, k) <= full);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("objects missing an attribute are rejected") {
    Dataset ds = load_running_example();
    ds.objects[0].values.pop_back();
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
}
