// Baseline pipeline: composite records and three inner skyline
// algorithms (block-nested-loops, sort-first, branch-and-bound).
//
// A composite record is one object's matching vectors for every user;
// record dominance is collective preference.  Record files are simulated
// pages: a page holds a fixed number of matching vectors, so a composite
// record occupies |U| vector slots and file sizes scale with the group.

#pragma once

#include <cstdint>
#include <vector>

#include "gcp/dominance.hpp"

namespace gcp {

struct PagingConfig {
    // Matching vectors per simulated page; a composite record takes |U|
    // of them.  One index node costs one read.
    std::size_t page_vector_capacity = 100;

    std::size_t records_per_page(std::size_t num_users) const {
        std::size_t per = page_vector_capacity / std::max<std::size_t>(1, num_users);
        return std::max<std::size_t>(1, per);
    }
    std::size_t pages_for(std::size_t records, std::size_t num_users) const {
        std::size_t per = records_per_page(num_users);
        return (records + per - 1) / per;
    }
};

enum class InnerSkyline { kBnl, kSfs, kBbs };

struct SkylineConfig {
    PagingConfig paging;
    // Block-nested-loops window, in records; exceeding it spills to a
    // temporary file and triggers another pass.
    std::size_t bnl_window_records = 10'000;
    // Fanout of the norm-space point index behind the BBS variant.
    std::size_t bbs_node_capacity = 64;
};

// Inner algorithms over an already-built table (record file I/O for the
// table itself is charged by bsl()).  Results are object indices.
std::vector<std::size_t> bnl_skyline(const DominanceJudge& judge, const SkylineConfig& cfg);
std::vector<std::size_t> sfs_skyline(const DominanceJudge& judge, const SkylineConfig& cfg);
std::vector<std::size_t> bbs_skyline(const DominanceJudge& judge, const SkylineConfig& cfg);

// Full baseline: compute matching vectors, spill the composite record
// file (counting page I/O), run the chosen inner skyline.
std::vector<std::size_t> bsl(const DominanceJudge& judge, InnerSkyline inner,
                             const SkylineConfig& cfg);

// Baseline for the relaxed problem: bsl() followed by pairwise
// p-dominance filtering within the collectively maximal set.
std::vector<std::size_t> p_bsl(const DominanceJudge& judge, Percent p, InnerSkyline inner,
                               const SkylineConfig& cfg);

}  // namespace gcp
