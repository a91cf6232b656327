// Bound-guided search over the interval-transformed object index.
//
// For a tree entry and a user, the maximum matching degree is an upper
// bound on the matching degree of every enclosed object, computed from
// the entry's MBR range and the user's interval set alone; bounds of
// leaf entries are the true degrees.  The search pops entries best
// score first, prunes entries whose bound vectors are collectively
// dominated by an already-found maximal object, and decides membership
// of popped objects with full dominance checks, so the result never
// depends on bound tightness.

#pragma once

#include <string>
#include <vector>

#include "gcp/dominance.hpp"
#include "gcp/rtree.hpp"

namespace gcp {

using MaxMatchingVector = MatchingVector;

// Upper bound of the matching degree of any object enclosed by `e` for
// user `u` on (global) attribute `attr`.  Indifferent and non-indexed
// attributes bound at 1; a leaf entry yields the object's true degree.
Degree max_matching_degree(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                           const UserPrefs& u, std::size_t attr,
                           const MatchOptions& opts = {});

MaxMatchingVector max_matching_vector(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                                      const UserPrefs& u, const MatchOptions& opts = {});

// Sum over all users of the max-matching-vector norms.
double entry_score(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                   const MatchOptions& opts = {});

struct IndOptions {
    MatchOptions match;
    StrictnessMode strictness = StrictnessMode::kStandard;
    // Entry pruning only saves work; disabling it must not change the
    // result (exercised by the audit suite).
    bool prune = true;
    std::vector<std::string>* trace = nullptr;  // pop order, for inspection
};

struct IndResult {
    std::vector<std::size_t> cm;   // insertion order
    std::vector<std::size_t> pcm;  // p-variant only, insertion order
};

IndResult ind(const RTree& tree, const Dataset& ds, Counters* counters,
              const IndOptions& opts = {});

IndResult p_ind(const RTree& tree, const Dataset& ds, Percent p, Counters* counters,
                const IndOptions& opts = {});

struct AuditReport {
    std::size_t entries_checked = 0;
    std::vector<std::string> violations;

    bool clean() const { return violations.empty(); }
};

// Verifies, for every entry and user, that each bound coordinate is at
// least the corresponding true degree of every enclosed object, and
// that non-indexed coordinates report exactly 1.
AuditReport audit_bounds(const RTree& tree, const Dataset& ds, const MatchOptions& opts = {});

}  // namespace gcp
