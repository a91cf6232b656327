#include "gcp/skyline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <queue>

namespace gcp {

namespace {

// One block-nested-loops pass.  Window members present at pass start or
// inserted before the first spill have been compared against every
// record still in play and are confirmed into `out`; the rest carry over.
struct BnlWindowEntry {
    std::size_t object;
    bool carried;  // present since pass start
};

}  // namespace

std::vector<std::size_t> bnl_skyline(const DominanceJudge& judge, const SkylineConfig& cfg) {
    Counters* counters = judge.counters();
    std::size_t users = judge.table().num_users();

    std::vector<std::size_t> input(judge.table().num_objects());
    std::iota(input.begin(), input.end(), 0);

    std::vector<BnlWindowEntry> window;
    std::vector<std::size_t> out;
    while (!input.empty()) {
        if (counters) counters->io_reads += cfg.paging.pages_for(input.size(), users);
        std::vector<std::size_t> overflow;
        bool spilled = false;
        std::size_t first_spill_boundary = window.size();  // inserted before => confirmed
        for (std::size_t r : input) {
            bool dominated = false;
            for (std::size_t w = 0; w < window.size() && !dominated; ++w) {
                if (judge.collectively_preferred(window[w].object, r)) dominated = true;
            }
            if (dominated) continue;
            // Evict window members the new record dominates.
            for (std::size_t w = 0; w < window.size();) {
                if (judge.collectively_preferred(r, window[w].object)) {
                    if (w < first_spill_boundary) --first_spill_boundary;
                    window.erase(window.begin() + static_cast<std::ptrdiff_t>(w));
                } else {
                    ++w;
                }
            }
            if (window.size() < cfg.bnl_window_records) {
                window.push_back({r, false});
                if (!spilled) first_spill_boundary = window.size();
            } else {
                spilled = true;
                overflow.push_back(r);
            }
        }
        if (!overflow.empty() && counters) {
            counters->io_reads += cfg.paging.pages_for(overflow.size(), users);  // spill write
        }
        // Confirm and drop everything compared against all pending data.
        std::vector<BnlWindowEntry> kept;
        for (std::size_t w = 0; w < window.size(); ++w) {
            if (window[w].carried || w < first_spill_boundary) {
                out.push_back(window[w].object);
            } else {
                kept.push_back({window[w].object, true});
            }
        }
        window = std::move(kept);
        input = std::move(overflow);
    }
    for (const auto& e : window) out.push_back(e.object);
    return out;
}

std::vector<std::size_t> sfs_skyline(const DominanceJudge& judge, const SkylineConfig& cfg) {
    Counters* counters = judge.counters();
    const DegreeTable& table = judge.table();
    std::size_t users = table.num_users();
    std::size_t n = table.num_objects();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = table.norm_sum(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] > keys[b];
        return a < b;
    });
    if (counters) {
        std::size_t pages = cfg.paging.pages_for(n, users);
        counters->io_reads += 3 * pages;  // read input, write sorted, read sorted
    }

    // Descending monotone key: nothing later can dominate an accepted
    // record, so single-pass filtering suffices.
    std::vector<std::size_t> sky;
    for (std::size_t r : order) {
        bool dominated = false;
        for (std::size_t s : sky) {
            if (judge.collectively_preferred(s, r)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) sky.push_back(r);
    }
    return sky;
}

namespace {

// Norm-space point index for the branch-and-bound variant: objects as
// |U|-dimensional points of per-user norms, packed sort-tile-recursive.
struct NormNode {
    std::vector<double> max_corner;
    std::vector<std::size_t> children;  // node ids
    std::vector<std::size_t> points;    // object ids (leaf)
    double key = 0.0;
};

struct NormIndex {
    std::vector<NormNode> nodes;
    std::size_t root = 0;
};

void pack_level(const DegreeTable& table, std::vector<std::size_t>& items, bool leaf_level,
                std::size_t dim, std::size_t dims, std::size_t capacity,
                const std::vector<NormNode>& nodes, std::vector<std::vector<std::size_t>>& groups) {
    if (items.size() <= capacity || dim >= dims) {
        if (items.size() <= capacity) {
            groups.push_back(items);
            return;
        }
        // Dimensions exhausted: chop the remainder linearly.
        for (std::size_t off = 0; off < items.size(); off += capacity) {
            std::size_t end = std::min(items.size(), off + capacity);
            groups.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(off),
                                items.begin() + static_cast<std::ptrdiff_t>(end));
        }
        return;
    }
    auto coord = [&](std::size_t item) {
        return leaf_level ? table.norm(item, dim) : nodes[item].max_corner[dim];
    };
    std::sort(items.begin(), items.end(), [&](std::size_t a, std::size_t b) {
        double ca = coord(a), cb = coord(b);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    std::size_t total_groups = (items.size() + capacity - 1) / capacity;
    std::size_t remaining_dims = dims - dim;
    auto slabs = static_cast<std::size_t>(std::ceil(
        std::pow(static_cast<double>(total_groups), 1.0 / static_cast<double>(remaining_dims))));
    slabs = std::max<std::size_t>(1, slabs);
    std::size_t per_slab = (items.size() + slabs - 1) / slabs;
    for (std::size_t off = 0; off < items.size(); off += per_slab) {
        std::size_t end = std::min(items.size(), off + per_slab);
        std::vector<std::size_t> slab(items.begin() + static_cast<std::ptrdiff_t>(off),
                                      items.begin() + static_cast<std::ptrdiff_t>(end));
        pack_level(table, slab, leaf_level, dim + 1, dims, capacity, nodes, groups);
    }
}

NormIndex build_norm_index(const DegreeTable& table, std::size_t capacity) {
    NormIndex index;
    std::size_t users = table.num_users();
    std::vector<std::size_t> items(table.num_objects());
    std::iota(items.begin(), items.end(), 0);

    bool leaf_level = true;
    while (true) {
        std::vector<std::vector<std::size_t>> groups;
        pack_level(table, items, leaf_level, 0, users, capacity, index.nodes, groups);
        std::vector<std::size_t> level_nodes;
        for (auto& g : groups) {
            NormNode node;
            node.max_corner.assign(users, 0.0);
            if (leaf_level) {
                node.points = std::move(g);
                for (std::size_t p : node.points) {
                    for (std::size_t j = 0; j < users; ++j) {
                        node.max_corner[j] = std::max(node.max_corner[j], table.norm(p, j));
                    }
                }
            } else {
                node.children = std::move(g);
                for (std::size_t c : node.children) {
                    for (std::size_t j = 0; j < users; ++j) {
                        node.max_corner[j] = std::max(node.max_corner[j], index.nodes[c].max_corner[j]);
                    }
                }
            }
            node.key = std::accumulate(node.max_corner.begin(), node.max_corner.end(), 0.0);
            level_nodes.push_back(index.nodes.size());
            index.nodes.push_back(std::move(node));
        }
        if (level_nodes.size() == 1) {
            index.root = level_nodes.front();
            break;
        }
        items = std::move(level_nodes);
        leaf_level = false;
    }
    return index;
}

}  // namespace

std::vector<std::size_t> bbs_skyline(const DominanceJudge& judge, const SkylineConfig& cfg) {
    Counters* counters = judge.counters();
    const DegreeTable& table = judge.table();
    std::size_t users = table.num_users();
    std::size_t n = table.num_objects();
    if (n == 0) return {};

    if (counters) counters->io_reads += cfg.paging.pages_for(n, users);  // read records
    NormIndex index = build_norm_index(table, cfg.bbs_node_capacity);
    if (counters) counters->io_reads += index.nodes.size();  // node writes

    // Max-heap on the norm-sum upper bound; the bound only orders the
    // search, membership always uses the full composite dominance check.
    struct HeapItem {
        double key;
        std::size_t tie_id;
        bool is_node;
        std::size_t ref;
    };
    auto cmp = [](const HeapItem& a, const HeapItem& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.tie_id > b.tie_id;
    };
    std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(cmp)> heap(cmp);
    heap.push({index.nodes[index.root].key, n + index.root, true, index.root});

    std::vector<std::size_t> sky;
    while (!heap.empty()) {
        HeapItem item = heap.top();
        heap.pop();
        if (item.is_node) {
            const NormNode& node = index.nodes[item.ref];
            if (counters) ++counters->io_reads;
            for (std::size_t c : node.children) {
                heap.push({index.nodes[c].key, n + c, true, c});
            }
            for (std::size_t p : node.points) {
                heap.push({table.norm_sum(p), p, false, p});
            }
        } else {
            std::size_t r = item.ref;
            bool dominated = false;
            for (std::size_t s : sky) {
                if (judge.collectively_preferred(s, r)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) sky.push_back(r);
        }
    }
    return sky;
}

std::vector<std::size_t> bsl(const DominanceJudge& judge, InnerSkyline inner,
                             const SkylineConfig& cfg) {
    Counters* counters = judge.counters();
    if (counters) {
        counters->io_reads +=
            cfg.paging.pages_for(judge.table().num_objects(), judge.table().num_users());
    }
    std::vector<std::size_t> sky;
    switch (inner) {
        case InnerSkyline::kBnl:
            sky = bnl_skyline(judge, cfg);
            break;
        case InnerSkyline::kSfs:
            sky = sfs_skyline(judge, cfg);
            break;
        case InnerSkyline::kBbs:
            sky = bbs_skyline(judge, cfg);
            break;
    }
    std::sort(sky.begin(), sky.end());
    return sky;
}

std::vector<std::size_t> p_bsl(const DominanceJudge& judge, Percent p, InnerSkyline inner,
                               const SkylineConfig& cfg) {
    std::vector<std::size_t> cm = bsl(judge, inner, cfg);
    return brute_force_pcm_within(judge, p, cm);
}

}  // namespace gcp
