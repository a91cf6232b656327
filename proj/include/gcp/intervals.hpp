// Half-open integer intervals and disjoint interval sets.
//
// Interval sets are the numeric carrier for hierarchy values: every
// hierarchy node maps to a sorted, pairwise-disjoint, adjacency-merged
// set of [lo, hi) intervals whose total length equals the number of
// distinct leaves below the node.  All coordinates are exact integers.

#pragma once

#include <cstdint>
#include <vector>

namespace gcp {

struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;  // exclusive

    std::int64_t length() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

// Sorted, disjoint, adjacency-merged set of half-open intervals.
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(std::initializer_list<Interval> ivs);

    // Inserts [lo, hi), merging with overlapping/adjacent intervals.
    void add(std::int64_t lo, std::int64_t hi);

    // Union-merges another set into this one.
    void merge(const IntervalSet& other);

    std::int64_t total_length() const;
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }
    const std::vector<Interval>& parts() const { return parts_; }

    // True when the representation invariant holds (sorted, disjoint,
    // no adjacent pair left unmerged).
    bool is_canonical() const;

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<Interval> parts_;
};

// Cardinalities of two interval-set values and their overlap, in leaf
// counts: |x|, |y|, |x∩y|, |x∪y|.
struct SetCards {
    std::int64_t x_size = 0;
    std::int64_t y_size = 0;
    std::int64_t inter = 0;
    std::int64_t uni = 0;
};

// Exact cardinality arithmetic over two canonical interval sets:
// |x| = sum of lengths, |x∩y| = sum of pairwise overlaps,
// |x∪y| = |x| + |y| - |x∩y|.
SetCards set_cardinalities(const IntervalSet& x, const IntervalSet& y);

// Total overlap length between a set and a single range.
std::int64_t overlap_length(const IntervalSet& x, const Interval& range);

}  // namespace gcp
