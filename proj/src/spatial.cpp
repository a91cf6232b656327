#include "gcp/spatial.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_set>

namespace gcp {

namespace {

Degree clamp_unit(Degree d) { return Degree{1, 1} < d ? Degree{1, 1} : d; }

// Bound for one user value set against one MBR range: upper-bounds the
// intersection by the value's overlap with the range, lower-bounds the
// union (and the object value size) by the value set itself.
Degree range_bound(const IntervalSet& user_value, const Interval& range,
                   const SimilarityFunction& f) {
    std::int64_t inter_ub = overlap_length(user_value, range);
    if (inter_ub == 0) return Degree::zero();
    std::int64_t user_size = user_value.total_length();
    SetCards cards;
    cards.x_size = 1;  // enclosed object values hold at least one leaf
    cards.y_size = user_size;
    cards.inter = inter_ub;
    cards.uni = user_size;
    return clamp_unit(f.apply(cards));
}

int indexed_position(const RTree& tree, std::size_t attr) {
    const auto& attrs = tree.indexed_attrs();
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (attrs[i] == attr) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

Degree max_matching_degree(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                           const UserPrefs& u, std::size_t attr, const MatchOptions& opts) {
    if (u.indifferent(attr)) {
        return opts.indifferent == IndifferentPolicy::kOne ? Degree::one() : Degree::zero();
    }
    if (e.is_object()) {
        return matching_degree(ds, ds.objects[e.object_index()], u, attr, opts);
    }
    int pos = indexed_position(tree, attr);
    if (pos < 0) return Degree::one();
    const IntervalLabeling& lab = ds.attributes[attr].labeling;
    const Interval& range = e.mbr.ranges[static_cast<std::size_t>(pos)];
    Degree best = Degree::zero();
    for (int node : *u.values[attr]) {
        Degree d = range_bound(lab.intervals(node), range, opts.similarity);
        if (best < d) best = d;
    }
    return best;
}

MaxMatchingVector max_matching_vector(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                                      const UserPrefs& u, const MatchOptions& opts) {
    MaxMatchingVector mv;
    mv.degrees.reserve(ds.dims());
    for (std::size_t k = 0; k < ds.dims(); ++k) {
        Degree d = max_matching_degree(tree, ds, e, u, k, opts);
        mv.norm += d.value();
        mv.degrees.push_back(d);
    }
    return mv;
}

double entry_score(const RTree& tree, const Dataset& ds, const RTreeEntry& e,
                   const MatchOptions& opts) {
    double score = 0.0;
    for (const auto& u : ds.users) score += max_matching_vector(tree, ds, e, u, opts).norm;
    return score;
}

namespace {

// Bump-allocated degree blocks: one block is users*dims degrees plus
// per-user norms plus the objective bounds.  Blocks of pruned entries
// are rolled back immediately, so the pool roughly tracks the heap.
struct BlockPool {
    std::size_t users = 0, dims = 0, obj_dims = 0;
    std::size_t used = 0;  // live blocks
    std::vector<Degree> degrees;
    std::vector<double> norms;
    std::vector<double> objective;

    void reserve_blocks(std::size_t n) {
        degrees.resize(n * users * dims);
        norms.resize(n * users);
        objective.resize(n * obj_dims);
    }
    std::size_t begin_block() {
        std::size_t id = used++;
        if (used * users * dims > degrees.size()) {
            degrees.resize(std::max(used, degrees.size() / (users * dims) * 2) * users * dims);
            norms.resize(degrees.size() / dims);
            objective.resize(degrees.size() / (users * dims) * obj_dims);
        }
        return id;
    }
    void rollback() { --used; }
    Degree* block_degrees(std::size_t id) { return degrees.data() + id * users * dims; }
    const Degree* block_degrees(std::size_t id) const {
        return degrees.data() + id * users * dims;
    }
    double* block_norms(std::size_t id) { return norms.data() + id * users; }
    const double* block_norms(std::size_t id) const { return norms.data() + id * users; }
    std::span<const double> block_objective(std::size_t id) const {
        return {objective.data() + id * obj_dims, obj_dims};
    }
    double score(std::size_t id) const {
        double s = 0.0;
        const double* n = block_norms(id);
        for (std::size_t j = 0; j < users; ++j) s += n[j];
        return s;
    }
};

struct SearchContext {
    const RTree& tree;
    const Dataset& ds;
    Counters* counters;
    const IndOptions& opts;
    std::size_t users;
    std::size_t dims;
    std::vector<std::uint64_t> masks;
    bool subspace;
    BlockPool pool;

    std::span<const Degree> user_span(std::size_t block, std::size_t j) const {
        return {pool.block_degrees(block) + j * dims, dims};
    }

    PreferRel user_preferred(std::size_t a, std::size_t b, std::size_t j) const {
        // Norm prefilter; domination implies a norm at least as large.
        if (pool.block_norms(a)[j] < pool.block_norms(b)[j]) {
            if (counters) ++counters->dominance_checks;
            return PreferRel::kNeither;
        }
        return preferred_spans(user_span(a, j), user_span(b, j), masks[j],
                               pool.block_objective(a), pool.block_objective(b), opts.strictness,
                               counters);
    }

    // All users prefer block `a` over the (bound or exact) block `b`,
    // one strictly.
    bool collectively_dominates(std::size_t a, std::size_t b) const {
        bool any_strict = false;
        for (std::size_t j = 0; j < users; ++j) {
            PreferRel rel = user_preferred(a, b, j);
            if (rel == PreferRel::kNeither) return false;
            if (rel == PreferRel::kStrictlyPreferred) any_strict = true;
        }
        return any_strict;
    }

    bool p_dominates(std::size_t a, std::size_t b, std::size_t k) const {
        std::size_t preferring = 0;
        bool any_strict = false;
        for (std::size_t j = 0; j < users; ++j) {
            PreferRel rel = user_preferred(a, b, j);
            if (rel != PreferRel::kNeither) ++preferring;
            if (rel == PreferRel::kStrictlyPreferred) any_strict = true;
            if (preferring + (users - j - 1) < k) return false;
        }
        return preferring >= k && any_strict;
    }

    std::size_t fill_block(const RTreeEntry& e) {
        std::size_t id = pool.begin_block();
        Degree* cell = pool.block_degrees(id);
        double* norms = pool.block_norms(id);
        if (pool.obj_dims > 0) {
            double* obj = pool.objective.data() + id * pool.obj_dims;
            for (std::size_t k = 0; k < pool.obj_dims; ++k) obj[k] = e.objective_max[k];
        }
        if (e.is_object()) {
            const ObjectRecord& o = ds.objects[e.object_index()];
            if (subspace && counters) ++counters->io_reads;  // fetch non-indexed attributes
            for (std::size_t j = 0; j < users; ++j) {
                double norm = 0.0;
                for (std::size_t k = 0; k < dims; ++k) {
                    Degree d = matching_degree(ds, o, ds.users[j], k, opts.match);
                    cell[j * dims + k] = d;
                    norm += d.value();
                }
                norms[j] = norm;
            }
        } else {
            for (std::size_t j = 0; j < users; ++j) {
                double norm = 0.0;
                for (std::size_t k = 0; k < dims; ++k) {
                    Degree d = max_matching_degree(tree, ds, e, ds.users[j], k, opts.match);
                    cell[j * dims + k] = d;
                    norm += d.value();
                }
                norms[j] = norm;
            }
        }
        return id;
    }
};

struct HeapItem {
    double score;
    std::size_t tie_id;
    bool is_node;
    std::size_t ref;    // node id or object index
    std::size_t block;  // objects: block id in the pool
};

struct HeapOrder {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
        if (a.score != b.score) return a.score < b.score;
        return a.tie_id > b.tie_id;
    }
};

IndResult run_search(const RTree& tree, const Dataset& ds, Counters* counters,
                     const IndOptions& opts, bool p_variant, Percent p) {
    SearchContext ctx{tree,
                      ds,
                      counters,
                      opts,
                      ds.users.size(),
                      ds.dims(),
                      {},
                      tree.indexed_attrs().size() < ds.dims(),
                      {}};
    ctx.masks.resize(ctx.users, 0);
    for (std::size_t j = 0; j < ctx.users; ++j) {
        for (std::size_t k = 0; k < ctx.dims; ++k) {
            if (!ds.users[j].indifferent(k)) ctx.masks[j] |= (1ull << k);
        }
    }
    ctx.pool.users = ctx.users;
    ctx.pool.dims = ctx.dims;
    ctx.pool.obj_dims = ds.objective_names.size();
    ctx.pool.reserve_blocks(tree.num_objects() + 1);
    std::size_t k_threshold = p_variant ? min_agree_count(p, ctx.users) : 0;

    std::priority_queue<HeapItem, std::vector<HeapItem>, HeapOrder> heap;
    IndResult result;
    std::vector<std::size_t> cm_blocks;  // aligned with result.cm
    std::vector<char> in_pcm;

    auto push_entry = [&](const RTreeEntry& e) {
        std::size_t block = ctx.fill_block(e);
        if (opts.prune) {
            for (std::size_t a = 0; a < cm_blocks.size(); ++a) {
                if (ctx.collectively_dominates(cm_blocks[a], block)) {
                    ctx.pool.rollback();
                    return;
                }
            }
        }
        HeapItem item;
        item.score = ctx.pool.score(block);
        item.is_node = !e.is_object();
        item.block = block;
        if (e.is_object()) {
            item.ref = e.object_index();
            item.tie_id = item.ref;
        } else {
            item.ref = static_cast<std::size_t>(e.child);
            item.tie_id = tree.num_objects() + item.ref;
            ctx.pool.rollback();  // node bounds are only needed for the prune test
            item.block = static_cast<std::size_t>(-1);
        }
        heap.push(item);
    };

    // The root node is read up front and its entries seeded into the heap.
    if (counters) ++counters->io_reads;
    for (const auto& e : tree.node(tree.root()).entries) push_entry(e);

    while (!heap.empty()) {
        HeapItem item = heap.top();
        heap.pop();
        if (opts.trace) {
            opts.trace->push_back(item.is_node ? "N" + std::to_string(item.ref)
                                               : ds.objects[item.ref].id);
        }
        if (item.is_node) {
            if (counters) ++counters->io_reads;
            for (const auto& e : tree.node(item.ref).entries) push_entry(e);
            continue;
        }

        std::size_t block = item.block;
        bool in_cm = true;
        bool in_p = true;
        for (std::size_t a = 0; a < result.cm.size(); ++a) {
            if (ctx.collectively_dominates(cm_blocks[a], block)) {
                in_cm = false;
                break;
            }
            if (!p_variant) continue;
            if (in_p && ctx.p_dominates(cm_blocks[a], block, k_threshold)) in_p = false;
            if (in_pcm[a] && ctx.p_dominates(block, cm_blocks[a], k_threshold)) in_pcm[a] = 0;
        }
        if (in_cm) {
            result.cm.push_back(item.ref);
            cm_blocks.push_back(block);
            in_pcm.push_back(p_variant && in_p ? 1 : 0);
        }
    }

    if (p_variant) {
        for (std::size_t a = 0; a < result.cm.size(); ++a) {
            if (in_pcm[a]) result.pcm.push_back(result.cm[a]);
        }
    }
    return result;
}

}  // namespace

IndResult ind(const RTree& tree, const Dataset& ds, Counters* counters, const IndOptions& opts) {
    return run_search(tree, ds, counters, opts, false, Percent{100, 1});
}

IndResult p_ind(const RTree& tree, const Dataset& ds, Percent p, Counters* counters,
                const IndOptions& opts) {
    return run_search(tree, ds, counters, opts, true, p);
}

AuditReport audit_bounds(const RTree& tree, const Dataset& ds, const MatchOptions& opts) {
    AuditReport report;

    // Enclosed object sets per node, bottom up.
    std::vector<std::vector<std::size_t>> enclosed(tree.nodes().size());
    std::vector<std::size_t> by_level(tree.nodes().size());
    for (std::size_t id = 0; id < tree.nodes().size(); ++id) by_level[id] = id;
    std::sort(by_level.begin(), by_level.end(), [&](std::size_t a, std::size_t b) {
        return tree.node(a).level < tree.node(b).level;
    });
    for (std::size_t id : by_level) {
        for (const auto& e : tree.node(id).entries) {
            if (e.is_object()) {
                enclosed[id].push_back(e.object_index());
            } else {
                const auto& sub = enclosed[static_cast<std::size_t>(e.child)];
                enclosed[id].insert(enclosed[id].end(), sub.begin(), sub.end());
            }
        }
    }

    auto check_entry = [&](const RTreeEntry& e, const std::vector<std::size_t>& objects) {
        ++report.entries_checked;
        for (std::size_t j = 0; j < ds.users.size(); ++j) {
            for (std::size_t k = 0; k < ds.dims(); ++k) {
                Degree bound = max_matching_degree(tree, ds, e, ds.users[j], k, opts);
                bool indexed = false;
                for (std::size_t a : tree.indexed_attrs()) indexed |= a == k;
                if (!indexed && !e.is_object() && !(bound == Degree::one())) {
                    report.violations.push_back("non-indexed bound != 1 at attr " +
                                                std::to_string(k));
                    continue;
                }
                for (std::size_t o : objects) {
                    Degree actual = matching_degree(ds, ds.objects[o], ds.users[j], k, opts);
                    if (bound < actual) {
                        report.violations.push_back(
                            "bound " + std::to_string(bound.value()) + " < degree " +
                            std::to_string(actual.value()) + " (object " + ds.objects[o].id +
                            ", user " + ds.users[j].id + ", attr " + std::to_string(k) + ")");
                    }
                }
            }
        }
    };

    for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
        for (const auto& e : tree.node(id).entries) {
            if (e.is_object()) {
                check_entry(e, {e.object_index()});
            } else {
                check_entry(e, enclosed[static_cast<std::size_t>(e.child)]);
            }
        }
    }
    return report;
}

}  // namespace gcp
