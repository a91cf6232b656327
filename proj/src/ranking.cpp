#include "gcp/ranking.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace gcp {

namespace {

RankResult assemble(std::vector<std::size_t> ranks) {
    RankResult r;
    r.rank = std::move(ranks);
    std::map<std::size_t, std::vector<std::size_t>> tiers;
    for (std::size_t i = 0; i < r.rank.size(); ++i) tiers[r.rank[i]].push_back(i);
    for (auto& [tau, members] : tiers) r.tiers.emplace_back(tau, std::move(members));
    return r;
}

}  // namespace

std::vector<std::size_t> RankResult::flat_order() const {
    std::vector<std::size_t> out;
    for (const auto& [tau, members] : tiers) {
        out.insert(out.end(), members.begin(), members.end());
    }
    return out;
}

RankResult rank_cm(const DominanceJudge& judge, const std::vector<std::size_t>& cm) {
    std::size_t n = judge.table().num_objects();
    std::size_t users = judge.table().num_users();
    std::vector<std::size_t> ranks(n, users + 1);

    for (std::size_t oi : cm) {
        std::size_t rank = 1;
        for (std::size_t oj : cm) {
            if (oj == oi) continue;
            std::size_t tau = rank;
            while (tau <= users - 1) {
                if (judge.collectively_preferred_at_least(oj, oi, tau)) {
                    rank = tau + 1;
                } else {
                    break;
                }
                ++tau;
            }
        }
        ranks[oi] = rank;
    }
    return assemble(std::move(ranks));
}

RankResult rank_by_definition(const DominanceJudge& judge) {
    std::size_t n = judge.table().num_objects();
    std::vector<std::size_t> ranks(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t worst = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) worst = std::max(worst, judge.dominating_user_count(j, i));
        }
        ranks[i] = worst + 1;
    }
    return assemble(std::move(ranks));
}

const std::vector<std::pair<std::string, Strategy>>& strategy_catalog() {
    static const std::vector<std::pair<std::string, Strategy>> catalog = {
        {"add", Strategy::kAdd},
        {"mult", Strategy::kMult},
        {"misery", Strategy::kMisery},
        {"pleasure", Strategy::kPleasure},
        {"avg-misery", Strategy::kAvgMisery},
        {"avg-misery-plus", Strategy::kAvgMiseryPlus},
        {"copeland", Strategy::kCopeland},
        {"approval", Strategy::kApproval},
        {"borda", Strategy::kBorda},
    };
    return catalog;
}

Strategy strategy_from_name(const std::string& name) {
    for (const auto& [n, s] : strategy_catalog()) {
        if (n == name) return s;
    }
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(Strategy s) {
    for (const auto& [n, st] : strategy_catalog()) {
        if (st == s) return n;
    }
    return "?";
}

std::vector<std::vector<double>> strategy_scalars(const DegreeTable& table) {
    std::vector<std::vector<double>> scalars(table.num_objects(),
                                             std::vector<double>(table.num_users(), 0.0));
    for (std::size_t j = 0; j < table.num_users(); ++j) {
        std::uint64_t mask = table.specified_mask(j);
        int specified = std::popcount(mask);
        for (std::size_t i = 0; i < table.num_objects(); ++i) {
            auto degrees = table.degrees(i, j);
            double sum = 0.0;
            for (std::size_t k = 0; k < degrees.size(); ++k) {
                if (mask & (1ull << k)) sum += degrees[k].value();
            }
            scalars[i][j] = specified > 0 ? sum / specified : 0.0;
        }
    }
    return scalars;
}

namespace {

std::vector<double> borda_scores(const std::vector<std::vector<double>>& scalars,
                                 std::size_t users) {
    std::size_t n = scalars.size();
    std::vector<double> total(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < users; ++j) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scalars[a][j] != scalars[b][j]) return scalars[a][j] < scalars[b][j];
            return a < b;
        });
        // Lowest scalar scores 0; ties share the mean positional score.
        std::size_t pos = 0;
        while (pos < n) {
            std::size_t end = pos;
            while (end + 1 < n && scalars[order[end + 1]][j] == scalars[order[pos]][j]) ++end;
            double shared = 0.5 * static_cast<double>(pos + end);
            for (std::size_t t = pos; t <= end; ++t) total[order[t]] += shared;
            pos = end + 1;
        }
    }
    return total;
}

std::vector<double> copeland_scores(const std::vector<std::vector<double>>& scalars,
                                    std::size_t users) {
    std::size_t n = scalars.size();
    std::vector<double> score(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            int wins = 0, losses = 0;
            for (std::size_t j = 0; j < users; ++j) {
                if (scalars[a][j] > scalars[b][j]) ++wins;
                if (scalars[a][j] < scalars[b][j]) ++losses;
            }
            if (wins > losses) {
                score[a] += 1;
                score[b] -= 1;
            } else if (losses > wins) {
                score[a] -= 1;
                score[b] += 1;
            }
        }
    }
    return score;
}

}  // namespace

std::vector<std::size_t> strategy_rank(const DegreeTable& table, const StrategySpec& spec) {
    std::size_t n = table.num_objects();
    std::size_t users = table.num_users();
    auto scalars = strategy_scalars(table);
    std::vector<double> score(n, 0.0);

    switch (spec.strategy) {
        case Strategy::kAdd:
            for (std::size_t i = 0; i < n; ++i) {
                score[i] = std::accumulate(scalars[i].begin(), scalars[i].end(), 0.0);
            }
            break;
        case Strategy::kMult:
            for (std::size_t i = 0; i < n; ++i) {
                double prod = 1.0;
                for (double s : scalars[i]) prod *= s;
                score[i] = prod;
            }
            break;
        case Strategy::kMisery:
            for (std::size_t i = 0; i < n; ++i) {
                score[i] = *std::min_element(scalars[i].begin(), scalars[i].end());
            }
            break;
        case Strategy::kPleasure:
            for (std::size_t i = 0; i < n; ++i) {
                score[i] = *std::max_element(scalars[i].begin(), scalars[i].end());
            }
            break;
        case Strategy::kAvgMisery:
        case Strategy::kAvgMiseryPlus:
            for (std::size_t i = 0; i < n; ++i) {
                double thr = spec.strategy == Strategy::kAvgMisery
                                 ? spec.threshold
                                 : *std::min_element(scalars[i].begin(), scalars[i].end());
                double sum = 0.0;
                std::size_t cnt = 0;
                for (double s : scalars[i]) {
                    if (s >= thr) {
                        sum += s;
                        ++cnt;
                    }
                }
                score[i] = cnt > 0 ? sum / static_cast<double>(cnt) : 0.0;
            }
            break;
        case Strategy::kCopeland:
            score = copeland_scores(scalars, users);
            break;
        case Strategy::kApproval:
            for (std::size_t i = 0; i < n; ++i) {
                score[i] = static_cast<double>(std::count_if(
                    scalars[i].begin(), scalars[i].end(),
                    [&](double s) { return s >= spec.threshold; }));
            }
            break;
        case Strategy::kBorda:
            score = borda_scores(scalars, users);
            break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    return order;
}

double precision_at_k(const std::vector<std::size_t>& result,
                      const std::vector<std::size_t>& truth, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::unordered_map<std::size_t, bool> in_truth;
    for (std::size_t i = 0; i < truth.size() && i < k; ++i) in_truth[truth[i]] = true;
    std::size_t common = 0;
    for (std::size_t i = 0; i < result.size() && i < k; ++i) {
        if (in_truth.count(result[i])) ++common;
    }
    return static_cast<double>(common) / static_cast<double>(k);
}

double spearman_footrule(const std::vector<std::size_t>& result,
                         const std::vector<std::size_t>& truth, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (result.empty() || truth.empty()) throw std::invalid_argument("empty ranked list");
    std::unordered_map<std::size_t, std::size_t> pos_a, pos_b;
    for (std::size_t i = 0; i < result.size() && i < k; ++i) pos_a.emplace(result[i], i + 1);
    for (std::size_t i = 0; i < truth.size() && i < k; ++i) pos_b.emplace(truth[i], i + 1);
    const std::size_t missing = k + 1;
    std::int64_t total = 0;
    auto displacement = [&](const auto& primary, const auto& other) {
        std::int64_t sum = 0;
        for (const auto& [elem, p] : primary) {
            auto it = other.find(elem);
            std::size_t q = it == other.end() ? missing : it->second;
            sum += std::abs(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(q));
        }
        return sum;
    };
    total += displacement(pos_a, pos_b);
    // Elements only in the truth list contribute their distance to the
    // missing location.
    for (const auto& [elem, q] : pos_b) {
        if (!pos_a.count(elem)) {
            total += static_cast<std::int64_t>(missing) - static_cast<std::int64_t>(q);
        }
    }
    double max_total = static_cast<double>(k) * static_cast<double>(k + 1);
    return static_cast<double>(total) / max_total;
}

}  // namespace gcp
