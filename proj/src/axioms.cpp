#include "gcp/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gcp/synthetic.hpp"

namespace gcp {

namespace {

using Cells = std::vector<std::vector<std::vector<Degree>>>;

struct Instance {
    Cells cells;
    std::size_t users = 0;
    std::size_t dims = 0;

    std::size_t objects() const { return cells.size(); }

    DegreeTable table() const {
        return DegreeTable::inject(cells.size(), users, dims, cells);
    }
};

Degree random_degree(std::mt19937_64& rng) {
    std::int64_t den = 1 + static_cast<std::int64_t>(bounded_rand(rng, 6));
    std::int64_t num = static_cast<std::int64_t>(bounded_rand(rng, static_cast<std::uint64_t>(den) + 1));
    return Degree(num, den);
}

Instance random_instance(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in;
    in.users = 1 + bounded_rand(rng, cfg.max_users);
    in.dims = 1 + bounded_rand(rng, cfg.max_dims);
    std::size_t n = 2 + bounded_rand(rng, cfg.max_objects - 1);
    in.cells.resize(n);
    for (auto& row : in.cells) {
        row.resize(in.users);
        for (auto& cell : row) {
            cell.resize(in.dims);
            for (auto& d : cell) d = random_degree(rng);
        }
    }
    return in;
}

std::vector<std::size_t> ranks_of(const Instance& in) {
    DegreeTable table = in.table();
    DominanceJudge judge(table);
    return rank_cm(judge, brute_force_cm(judge)).rank;
}

// Forces `winner` to be strictly preferred over every other object by
// each user in `voters`.
void make_strict_favorite(Instance& in, std::size_t winner, const std::vector<std::size_t>& voters,
                          std::mt19937_64& rng) {
    for (std::size_t j : voters) {
        for (auto& d : in.cells[winner][j]) d = Degree::one();
        for (std::size_t o = 0; o < in.objects(); ++o) {
            if (o == winner) continue;
            auto& cell = in.cells[o][j];
            bool has_slack = false;
            for (const auto& d : cell) has_slack |= d < Degree::one();
            if (!has_slack) {
                std::size_t k = bounded_rand(rng, in.dims);
                cell[k] = Degree(1 + static_cast<std::int64_t>(bounded_rand(rng, 3)), 5);
            }
        }
    }
}

// Appends a clone of `src` strictly dominated by it; fails only when
// the source is zero everywhere.
bool append_dominated_clone(Instance& in, std::size_t src, std::mt19937_64& rng) {
    auto clone = in.cells[src];
    std::vector<std::pair<std::size_t, std::size_t>> positive;
    for (std::size_t j = 0; j < in.users; ++j) {
        for (std::size_t k = 0; k < in.dims; ++k) {
            if (Degree::zero() < clone[j][k]) positive.emplace_back(j, k);
        }
    }
    if (positive.empty()) return false;
    auto [j, k] = positive[bounded_rand(rng, positive.size())];
    clone[j][k] = Degree(clone[j][k].num, clone[j][k].den * 2);
    in.cells.push_back(std::move(clone));
    return true;
}

using SuiteFn = bool (*)(std::mt19937_64&, const AxiomConfig&);

bool suite_majority(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    std::size_t winner = bounded_rand(rng, in.objects());
    std::size_t majority = in.users / 2 + 1;
    std::vector<std::size_t> voters(in.users);
    std::iota(voters.begin(), voters.end(), 0);
    std::shuffle(voters.begin(), voters.end(), rng);
    voters.resize(majority);
    make_strict_favorite(in, winner, voters, rng);
    auto ranks = ranks_of(in);
    for (std::size_t o = 0; o < in.objects(); ++o) {
        if (o != winner && ranks[winner] >= ranks[o]) return false;
    }
    return true;
}

bool suite_anonymity(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    if (in.users < 2) return true;
    auto before = ranks_of(in);
    std::size_t a = bounded_rand(rng, in.users);
    std::size_t b = bounded_rand(rng, in.users);
    for (auto& row : in.cells) std::swap(row[a], row[b]);
    return before == ranks_of(in);
}

bool suite_iia(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    auto before = ranks_of(in);
    std::size_t users = in.users;
    // Removal: every non-maximal object disappears.
    Instance pruned = in;
    std::vector<std::size_t> kept;
    pruned.cells.clear();
    for (std::size_t o = 0; o < in.objects(); ++o) {
        if (before[o] <= users) {
            kept.push_back(o);
            pruned.cells.push_back(in.cells[o]);
        }
    }
    if (kept.size() != in.objects()) {
        auto after = ranks_of(pruned);
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (after[i] != before[kept[i]]) return false;
        }
    }
    // Insertion of a dominated newcomer.
    Instance grown = in;
    if (append_dominated_clone(grown, bounded_rand(rng, in.objects()), rng)) {
        auto after = ranks_of(grown);
        for (std::size_t o = 0; o < in.objects(); ++o) {
            if (after[o] != before[o]) return false;
        }
    }
    return true;
}

bool suite_clones(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    auto before = ranks_of(in);
    Instance grown = in;
    std::size_t src = bounded_rand(rng, in.objects());
    std::size_t copies = 1 + bounded_rand(rng, 3);
    for (std::size_t c = 0; c < copies; ++c) {
        if (!append_dominated_clone(grown, src, rng)) return true;
    }
    auto after = ranks_of(grown);
    for (std::size_t o = 0; o < in.objects(); ++o) {
        if (after[o] != before[o]) return false;
    }
    // The clones themselves sink to the bottom tier.
    for (std::size_t c = in.objects(); c < grown.objects(); ++c) {
        if (after[c] != in.users + 1) return false;
    }
    return true;
}

bool suite_monotonicity(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    auto before = ranks_of(in);
    std::size_t a = bounded_rand(rng, in.objects());
    std::size_t j = bounded_rand(rng, in.users);
    Instance boosted = in;
    bool strict = false;
    for (std::size_t k = 0; k < in.dims; ++k) {
        Degree d = random_degree(rng);
        if (boosted.cells[a][j][k] < d) {
            boosted.cells[a][j][k] = d;
            strict = true;
        }
    }
    if (!strict) {
        for (std::size_t k = 0; k < in.dims && !strict; ++k) {
            if (boosted.cells[a][j][k] < Degree::one()) {
                boosted.cells[a][j][k] = Degree::one();
                strict = true;
            }
        }
    }
    if (!strict) return true;  // vector already maximal everywhere
    auto after = ranks_of(boosted);
    if (after[a] > before[a]) return false;
    for (std::size_t o = 0; o < in.objects(); ++o) {
        if (o != a && after[o] < before[o]) return false;
        if (o != a && before[a] < before[o] && after[a] >= after[o]) return false;
    }
    return true;
}

bool suite_participation(std::mt19937_64& rng, const AxiomConfig& cfg) {
    Instance in = random_instance(rng, cfg);
    auto before = ranks_of(in);
    std::size_t a = bounded_rand(rng, in.objects());
    Instance grown = in;
    std::size_t newcomers = 1 + bounded_rand(rng, 2);
    for (std::size_t m = 0; m < newcomers; ++m) {
        for (auto& row : grown.cells) {
            std::vector<Degree> cell(grown.dims);
            for (auto& d : cell) d = random_degree(rng);
            row.push_back(std::move(cell));
        }
        ++grown.users;
        make_strict_favorite(grown, a, {grown.users - 1}, rng);
    }
    auto after = ranks_of(grown);
    for (std::size_t b = 0; b < in.objects(); ++b) {
        if (before[a] < before[b] && after[a] >= after[b]) return false;
    }
    return true;
}

bool suite_resolvability(std::mt19937_64& rng, const AxiomConfig& cfg) {
    // The two-object construction: four users split 2/2, each half
    // strictly favoring one object; a fifth supporter breaks the tie.
    Instance in;
    in.users = 4;
    in.dims = 1 + bounded_rand(rng, cfg.max_dims);
    std::size_t extras = bounded_rand(rng, 4);
    in.cells.resize(2 + extras);
    for (auto& row : in.cells) {
        row.resize(in.users);
        for (auto& cell : row) {
            cell.assign(in.dims, Degree::zero());
        }
    }
    // Extra objects stay strictly below both contenders everywhere.
    for (std::size_t o = 2; o < in.objects(); ++o) {
        for (auto& cell : in.cells[o]) {
            for (auto& d : cell) d = Degree(1, 4 + static_cast<std::int64_t>(bounded_rand(rng, 4)));
        }
    }
    for (std::size_t j = 0; j < 4; ++j) {
        std::size_t favorite = j < 2 ? 0 : 1;
        for (auto& d : in.cells[favorite][j]) d = Degree::one();
        for (auto& d : in.cells[1 - favorite][j]) d = Degree(1, 2);
    }
    auto before = ranks_of(in);
    if (before[0] != 3 || before[1] != 3) return false;
    // Add the fifth user, favoring object 0.
    for (std::size_t o = 0; o < in.objects(); ++o) {
        std::vector<Degree> cell(in.dims, o == 0 ? Degree::one() : Degree(1, 2));
        if (o >= 2) cell.assign(in.dims, Degree(1, 8));
        in.cells[o].push_back(std::move(cell));
    }
    ++in.users;
    auto after = ranks_of(in);
    return after[0] == 3 && after[1] == 4;
}

bool suite_neutrality(std::mt19937_64& rng, const AxiomConfig& cfg) {
    // Renaming invariance.
    Instance in = random_instance(rng, cfg);
    auto before = ranks_of(in);
    std::vector<std::size_t> perm(in.objects());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Instance renamed = in;
    for (std::size_t o = 0; o < in.objects(); ++o) renamed.cells[perm[o]] = in.cells[o];
    auto after = ranks_of(renamed);
    for (std::size_t o = 0; o < in.objects(); ++o) {
        if (after[perm[o]] != before[o]) return false;
    }
    // Degrees alone determine the result: a coordinate a user is
    // indifferent about (degree 1 everywhere) ranks identically whether
    // the mask skips it or the comparison reads the 1s.
    Instance masked = in;
    std::size_t j = bounded_rand(rng, in.users);
    std::size_t k = bounded_rand(rng, in.dims);
    for (auto& row : masked.cells) row[j][k] = Degree::one();
    std::uint64_t all = masked.dims == 64 ? ~0ull : (1ull << masked.dims) - 1;
    std::vector<std::uint64_t> masks(masked.users, all);
    masks[j] &= ~(1ull << k);

    DegreeTable specified = masked.table();
    DominanceJudge specified_judge(specified);
    auto specified_ranks = rank_cm(specified_judge, brute_force_cm(specified_judge)).rank;

    DegreeTable flagged =
        DegreeTable::inject(masked.objects(), masked.users, masked.dims, masked.cells, masks);
    DominanceJudge flagged_judge(flagged);
    auto flagged_ranks = rank_cm(flagged_judge, brute_force_cm(flagged_judge)).rank;
    return specified_ranks == flagged_ranks;
}

}  // namespace

AxiomReport axiom_suite(const AxiomConfig& cfg) {
    const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"majority", suite_majority},
        {"anonymity", suite_anonymity},
        {"independence-of-irrelevant-alternatives", suite_iia},
        {"clone-independence", suite_clones},
        {"monotonicity", suite_monotonicity},
        {"participation", suite_participation},
        {"resolvability", suite_resolvability},
        {"neutrality", suite_neutrality},
    };
    AxiomReport report;
    for (const auto& [name, fn] : suites) {
        AxiomSuiteResult result;
        result.name = name;
        result.trials = cfg.trials;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            std::uint64_t seed = cfg.seed + t;
            std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
            if (!fn(rng, cfg)) result.violations.push_back(seed);
        }
        report.suites.push_back(std::move(result));
    }
    return report;
}

}  // namespace gcp
