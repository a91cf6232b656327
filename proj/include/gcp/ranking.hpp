// Tier ranking of the collectively maximal objects, baseline
// aggregation strategies, and top-k list comparison metrics.
//
// The rank of an object is the smallest user count τ such that the
// object stays maximal under the τ-user relaxation for every threshold
// at or above τ; non-maximal objects take rank |U|+1.  Ties share a
// tier, tiers are totally ordered.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcp/dominance.hpp"

namespace gcp {

struct RankResult {
    // Object index -> rank in [1, |U|+1].
    std::vector<std::size_t> rank;
    // Ranks in ascending order with their members in catalog order.
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> tiers;

    // All objects ordered by tier, catalog order within a tier.
    std::vector<std::size_t> flat_order() const;
};

// Tier ranking by threshold escalation over the collectively maximal
// set; `cm` must be the collectively maximal objects of the judge's
// table.
RankResult rank_cm(const DominanceJudge& judge, const std::vector<std::size_t>& cm);

// Direct-definition oracle: 1 + the largest user count at which any
// other object dominates, over all objects.
RankResult rank_by_definition(const DominanceJudge& judge);

enum class Strategy {
    kAdd,
    kMult,
    kMisery,
    kPleasure,
    kAvgMisery,
    kAvgMiseryPlus,
    kCopeland,
    kApproval,
    kBorda,
};

struct StrategySpec {
    Strategy strategy = Strategy::kAdd;
    double threshold = 0.5;  // AVG_MISERY and APPROVAL
};

const std::vector<std::pair<std::string, Strategy>>& strategy_catalog();
Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

// Per-user scalar for the baseline strategies: mean of the degrees on
// the user's specified attributes.
std::vector<std::vector<double>> strategy_scalars(const DegreeTable& table);

// Full ordered list (best first); ties resolved by object index.
std::vector<std::size_t> strategy_rank(const DegreeTable& table, const StrategySpec& spec);

// |top-k(result) ∩ top-k(truth)| / k.
double precision_at_k(const std::vector<std::size_t>& result,
                      const std::vector<std::size_t>& truth, std::size_t k);

// Generalized top-k Spearman footrule: missing elements sit at location
// k+1, normalized by the disjoint-list maximum k(k+1); 0 means the
// top-k lists agree, 1 means they are disjoint.
double spearman_footrule(const std::vector<std::size_t>& result,
                         const std::vector<std::size_t>& truth, std::size_t k);

}  // namespace gcp
