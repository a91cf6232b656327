#include "gcp/intervals.hpp"

#include <algorithm>
#include <cassert>

namespace gcp {

IntervalSet::IntervalSet(std::initializer_list<Interval> ivs) {
    for (const auto& iv : ivs) add(iv.lo, iv.hi);
}

void IntervalSet::add(std::int64_t lo, std::int64_t hi) {
    assert(lo < hi);
    Interval cur{lo, hi};
    auto it = std::lower_bound(parts_.begin(), parts_.end(), cur,
                               [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // Absorb the predecessor when it touches or overlaps cur.
    if (it != parts_.begin()) {
        auto prev = std::prev(it);
        if (prev->hi >= cur.lo) {
            cur.lo = prev->lo;
            cur.hi = std::max(cur.hi, prev->hi);
            it = parts_.erase(prev);
        }
    }
    // Absorb successors swallowed or touched by cur.
    while (it != parts_.end() && it->lo <= cur.hi) {
        cur.hi = std::max(cur.hi, it->hi);
        it = parts_.erase(it);
    }
    parts_.insert(it, cur);
}

void IntervalSet::merge(const IntervalSet& other) {
    for (const auto& iv : other.parts_) add(iv.lo, iv.hi);
}

std::int64_t IntervalSet::total_length() const {
    std::int64_t sum = 0;
    for (const auto& iv : parts_) sum += iv.length();
    return sum;
}

bool IntervalSet::is_canonical() const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].lo >= parts_[i].hi) return false;
        if (i > 0 && parts_[i - 1].hi >= parts_[i].lo) return false;
    }
    return true;
}

SetCards set_cardinalities(const IntervalSet& x, const IntervalSet& y) {
    SetCards c;
    const auto& xs = x.parts();
    const auto& ys = y.parts();
    if (xs.size() == 1 && ys.size() == 1) {
        c.x_size = xs[0].length();
        c.y_size = ys[0].length();
        std::int64_t lo = std::max(xs[0].lo, ys[0].lo);
        std::int64_t hi = std::min(xs[0].hi, ys[0].hi);
        c.inter = lo < hi ? hi - lo : 0;
        c.uni = c.x_size + c.y_size - c.inter;
        return c;
    }
    c.x_size = x.total_length();
    c.y_size = y.total_length();
    // Two-pointer sweep over the sorted disjoint parts.
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        std::int64_t lo = std::max(xs[i].lo, ys[j].lo);
        std::int64_t hi = std::min(xs[i].hi, ys[j].hi);
        if (lo < hi) c.inter += hi - lo;
        if (xs[i].hi < ys[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    c.uni = c.x_size + c.y_size - c.inter;
    return c;
}

std::int64_t overlap_length(const IntervalSet& x, const Interval& range) {
    std::int64_t sum = 0;
    for (const auto& iv : x.parts()) {
        std::int64_t lo = std::max(iv.lo, range.lo);
        std::int64_t hi = std::min(iv.hi, range.hi);
        if (lo < hi) sum += hi - lo;
        if (iv.lo >= range.hi) break;
    }
    return sum;
}

}  // namespace gcp
