#include "gcp/dominance.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcp {

Percent Percent::parse(const std::string& text) {
    std::size_t dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("empty percentage");
    Percent p;
    p.num = whole.empty() ? 0 : std::stoll(whole);
    p.den = 1;
    for (char c : frac) {
        if (c < '0' || c > '9') throw std::invalid_argument("invalid percentage '" + text + "'");
        p.num = p.num * 10 + (c - '0');
        p.den *= 10;
    }
    if (p.num <= 0 || p.num > 100 * p.den) {
        throw std::invalid_argument("percentage must lie in (0, 100]");
    }
    return p;
}

std::size_t min_agree_count(Percent p, std::size_t num_users) {
    std::int64_t n = static_cast<std::int64_t>(num_users);
    std::int64_t num = p.num * n;
    std::int64_t den = 100 * p.den;
    return static_cast<std::size_t>((num + den - 1) / den);
}

PreferRel preferred_spans(std::span<const Degree> a, std::span<const Degree> b,
                          std::uint64_t specified_mask, std::span<const double> obj_a,
                          std::span<const double> obj_b, StrictnessMode mode, Counters* counters) {
    if (a.size() != b.size() || obj_a.size() != obj_b.size()) {
        throw std::invalid_argument("mismatched vector dimensionality");
    }
    if (counters) ++counters->dominance_checks;
    bool strict_subjective = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(specified_mask & (1ull << k))) continue;
        if (a[k] < b[k]) return PreferRel::kNeither;
        if (b[k] < a[k]) strict_subjective = true;
    }
    bool strict_objective = false;
    for (std::size_t k = 0; k < obj_a.size(); ++k) {
        if (obj_a[k] < obj_b[k]) return PreferRel::kNeither;
        if (obj_a[k] > obj_b[k]) strict_objective = true;
    }
    bool strict = false;
    switch (mode) {
        case StrictnessMode::kStandard:
            strict = strict_subjective || strict_objective;
            break;
        case StrictnessMode::kLiteralObjective:
            strict = strict_subjective && (obj_a.empty() || strict_objective);
            break;
    }
    return strict ? PreferRel::kStrictlyPreferred : PreferRel::kPreferred;
}

std::span<const double> DominanceJudge::objective_of(std::size_t object) const {
    if (!dataset_ || dataset_->objective_names.empty()) return {};
    return dataset_->objects[object].objective;
}

PreferRel DominanceJudge::preferred(std::size_t user, std::size_t object_a,
                                    std::size_t object_b) const {
    // A dominating vector has at least the dominated vector's norm
    // (indifferent coordinates agree), so the cheap norm comparison
    // settles most non-preferences outright.
    if (table_->norm(object_a, user) < table_->norm(object_b, user)) {
        if (counters_) ++counters_->dominance_checks;
        return PreferRel::kNeither;
    }
    return preferred_spans(table_->degrees(object_a, user), table_->degrees(object_b, user),
                           table_->specified_mask(user), objective_of(object_a),
                           objective_of(object_b), mode_, counters_);
}

bool DominanceJudge::collectively_preferred(std::size_t object_a, std::size_t object_b) const {
    bool any_strict = false;
    for (std::size_t j = 0; j < table_->num_users(); ++j) {
        PreferRel rel = preferred(j, object_a, object_b);
        if (rel == PreferRel::kNeither) return false;
        if (rel == PreferRel::kStrictlyPreferred) any_strict = true;
    }
    return any_strict;
}

bool DominanceJudge::collectively_preferred_at_least(std::size_t object_a, std::size_t object_b,
                                                     std::size_t k) const {
    // A strict preference is also a preference, so a preferring subset of
    // size k containing a strict user exists exactly when the preferring
    // count reaches k and some user is strict.
    std::size_t preferring = 0;
    bool any_strict = false;
    std::size_t users = table_->num_users();
    for (std::size_t j = 0; j < users; ++j) {
        PreferRel rel = preferred(j, object_a, object_b);
        if (rel != PreferRel::kNeither) ++preferring;
        if (rel == PreferRel::kStrictlyPreferred) any_strict = true;
        // Remaining users cannot lift the count to k anymore.
        if (preferring + (users - j - 1) < k) return false;
    }
    return preferring >= k && any_strict;
}

bool DominanceJudge::p_collectively_preferred(std::size_t object_a, std::size_t object_b,
                                              Percent p) const {
    std::size_t k = min_agree_count(p, table_->num_users());
    if (k < 1 || k > table_->num_users()) throw std::invalid_argument("invalid p threshold");
    return collectively_preferred_at_least(object_a, object_b, k);
}

std::size_t DominanceJudge::dominating_user_count(std::size_t object_a,
                                                  std::size_t object_b) const {
    std::size_t preferring = 0;
    bool any_strict = false;
    for (std::size_t j = 0; j < table_->num_users(); ++j) {
        PreferRel rel = preferred(j, object_a, object_b);
        if (rel != PreferRel::kNeither) ++preferring;
        if (rel == PreferRel::kStrictlyPreferred) any_strict = true;
    }
    return any_strict ? preferring : 0;
}

std::vector<std::size_t> brute_force_cm(const DominanceJudge& judge) {
    std::vector<std::size_t> cm;
    std::size_t n = judge.table().num_objects();
    for (std::size_t i = 0; i < n; ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < n && !dominated; ++j) {
            if (j != i && judge.collectively_preferred(j, i)) dominated = true;
        }
        if (!dominated) cm.push_back(i);
    }
    return cm;
}

std::vector<std::size_t> brute_force_pcm(const DominanceJudge& judge, Percent p) {
    return brute_force_pcm_within(judge, p, brute_force_cm(judge));
}

std::vector<std::size_t> brute_force_pcm_within(const DominanceJudge& judge, Percent p,
                                                const std::vector<std::size_t>& cm) {
    std::size_t k = min_agree_count(p, judge.table().num_users());
    std::vector<std::size_t> pcm;
    for (std::size_t i : cm) {
        bool dominated = false;
        for (std::size_t j : cm) {
            if (j != i && judge.collectively_preferred_at_least(j, i, k)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) pcm.push_back(i);
    }
    return pcm;
}

}  // namespace gcp
