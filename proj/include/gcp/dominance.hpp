// The two Pareto aggregations.
//
// Per user: object a is preferred over b when its matching degrees are
// at least b's on every attribute the user specified; strictly preferred
// when one of them is larger.  Across users: a is collectively preferred
// over b when every user prefers a and at least one strictly prefers it;
// the p-relaxation asks only ceil(p/100 * |U|) users to agree.  Objective
// attributes (same order for everyone) join the per-user conjunction.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcp/counters.hpp"
#include "gcp/model.hpp"

namespace gcp {

enum class PreferRel { kNeither, kPreferred, kStrictlyPreferred };

enum class StrictnessMode {
    // Pareto strictness: at least one strict coordinate, subjective or
    // objective.
    kStandard,
    // Verbatim reading of the objective-attribute definition: one strict
    // subjective and one strict objective coordinate.  With no objective
    // attributes the objective clause is vacuous.
    kLiteralObjective,
};

// Exact percentage as a rational so the user-count threshold is integer
// arithmetic throughout: k = ceil(num * |U| / (100 * den)).
struct Percent {
    std::int64_t num = 100;
    std::int64_t den = 1;

    static Percent of(std::int64_t whole) { return {whole, 1}; }
    static Percent parse(const std::string& text);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::size_t min_agree_count(Percent p, std::size_t num_users);

struct DominanceConfig {
    Percent p_percent{100, 1};
    StrictnessMode strictness = StrictnessMode::kStandard;
};

// Per-user relation between two degree spans under a specified-attribute
// mask.  Objective spans may be empty; `counters` (when given) is charged
// one dominance check per call.
PreferRel preferred_spans(std::span<const Degree> a, std::span<const Degree> b,
                          std::uint64_t specified_mask, std::span<const double> obj_a,
                          std::span<const double> obj_b, StrictnessMode mode, Counters* counters);

// Evaluates preference relations over a degree table, charging one
// dominance check per preferred() evaluation.
class DominanceJudge {
public:
    DominanceJudge(const DegreeTable& table, Counters* counters = nullptr,
                   const Dataset* dataset = nullptr,
                   StrictnessMode mode = StrictnessMode::kStandard)
        : table_(&table), counters_(counters), dataset_(dataset), mode_(mode) {}

    const DegreeTable& table() const { return *table_; }
    Counters* counters() const { return counters_; }

    PreferRel preferred(std::size_t user, std::size_t object_a, std::size_t object_b) const;

    // True when a is preferred by all users with one strict preference.
    bool collectively_preferred(std::size_t object_a, std::size_t object_b) const;

    // True when at least `k` users prefer a over b, one of them strictly.
    bool collectively_preferred_at_least(std::size_t object_a, std::size_t object_b,
                                         std::size_t k) const;

    bool p_collectively_preferred(std::size_t object_a, std::size_t object_b, Percent p) const;

    // Number of users preferring a over b, or 0 when none is strict (the
    // largest k at which a k-dominates b).
    std::size_t dominating_user_count(std::size_t object_a, std::size_t object_b) const;

    std::span<const double> objective_of(std::size_t object) const;

private:
    const DegreeTable* table_;
    Counters* counters_;
    const Dataset* dataset_;
    StrictnessMode mode_;
};

// O(|O|^2) oracle for the collectively maximal objects.
std::vector<std::size_t> brute_force_cm(const DominanceJudge& judge);

// Oracle for the p-collectively maximal objects; only collectively
// maximal objects can be p-maximal, and checking candidates against the
// collectively maximal set alone is sufficient.
std::vector<std::size_t> brute_force_pcm(const DominanceJudge& judge, Percent p);
std::vector<std::size_t> brute_force_pcm_within(const DominanceJudge& judge, Percent p,
                                                const std::vector<std::size_t>& cm);

}  // namespace gcp
