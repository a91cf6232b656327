#include "gcp/rtree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gcp {

struct RTreeBuilderAccess {
    static RTree make(std::vector<RTreeNode> nodes, std::size_t root,
                      std::vector<std::size_t> attrs, std::size_t num_objects) {
        RTree t;
        t.nodes_ = std::move(nodes);
        t.root_ = root;
        t.attrs_ = std::move(attrs);
        t.num_objects_ = num_objects;
        return t;
    }
    static void set_root_entry(RTree& t, RTreeEntry e) { t.root_entry_ = std::move(e); }
};

std::vector<Rect> transform(const Dataset& ds, const ObjectRecord& o,
                            const std::vector<std::size_t>& attrs) {
    // Interval choices per attribute: one per (value, interval) pair.
    std::vector<std::vector<Interval>> choices(attrs.size());
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        const IntervalLabeling& lab = ds.attributes[attrs[a]].labeling;
        for (int node : o.values[attrs[a]]) {
            const IntervalSet& ivs = lab.intervals(node);
            if (ivs.empty()) throw std::invalid_argument("unlabeled node in object '" + o.id + "'");
            for (const auto& iv : ivs.parts()) choices[a].push_back(iv);
        }
    }
    std::size_t count = 1;
    for (const auto& c : choices) count *= c.size();
    std::vector<Rect> rects;
    rects.reserve(count);
    std::vector<std::size_t> pick(attrs.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
        Rect r;
        r.ranges.reserve(attrs.size());
        for (std::size_t a = 0; a < attrs.size(); ++a) r.ranges.push_back(choices[a][pick[a]]);
        rects.push_back(std::move(r));
        for (std::size_t a = attrs.size(); a-- > 0;) {
            if (++pick[a] < choices[a].size()) break;
            pick[a] = 0;
        }
    }
    return rects;
}

std::vector<Rect> transform(const Dataset& ds, const ObjectRecord& o) {
    std::vector<std::size_t> attrs(ds.dims());
    std::iota(attrs.begin(), attrs.end(), 0);
    return transform(ds, o, attrs);
}

Rect rect_cover(const Rect& a, const Rect& b) {
    Rect out = a;
    for (std::size_t k = 0; k < out.ranges.size(); ++k) {
        out.ranges[k].lo = std::min(out.ranges[k].lo, b.ranges[k].lo);
        out.ranges[k].hi = std::max(out.ranges[k].hi, b.ranges[k].hi);
    }
    return out;
}

bool rect_contains(const Rect& outer, const Rect& inner) {
    for (std::size_t k = 0; k < outer.ranges.size(); ++k) {
        if (inner.ranges[k].lo < outer.ranges[k].lo || inner.ranges[k].hi > outer.ranges[k].hi) {
            return false;
        }
    }
    return true;
}

namespace {

double rect_area(const Rect& r) {
    double area = 1.0;
    for (const auto& iv : r.ranges) area *= static_cast<double>(iv.length());
    return area;
}

double rect_margin(const Rect& r) {
    double m = 0.0;
    for (const auto& iv : r.ranges) m += static_cast<double>(iv.length());
    return m;
}

double rect_overlap(const Rect& a, const Rect& b) {
    double v = 1.0;
    for (std::size_t k = 0; k < a.ranges.size(); ++k) {
        std::int64_t lo = std::max(a.ranges[k].lo, b.ranges[k].lo);
        std::int64_t hi = std::min(a.ranges[k].hi, b.ranges[k].hi);
        if (lo >= hi) return 0.0;
        v *= static_cast<double>(hi - lo);
    }
    return v;
}

std::vector<double> objective_union(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty()) return b;
    std::vector<double> out = a;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], b[k]);
    return out;
}

RTreeEntry entry_for_node(const std::vector<RTreeNode>& nodes, std::size_t id) {
    const RTreeNode& node = nodes[id];
    RTreeEntry e;
    e.child = static_cast<std::int32_t>(id);
    e.mbr = node.entries.front().mbr;
    e.objective_max = node.entries.front().objective_max;
    for (std::size_t i = 1; i < node.entries.size(); ++i) {
        e.mbr = rect_cover(e.mbr, node.entries[i].mbr);
        e.objective_max = objective_union(e.objective_max, node.entries[i].objective_max);
    }
    return e;
}

// --- sort-tile-recursive packing -------------------------------------

void str_tiles(std::vector<std::size_t>& items, const std::vector<RTreeEntry>& entries,
               std::size_t dim, std::size_t dims, std::size_t capacity,
               std::vector<std::vector<std::size_t>>& groups) {
    if (items.size() <= capacity) {
        groups.push_back(items);
        return;
    }
    if (dim >= dims) {
        for (std::size_t off = 0; off < items.size(); off += capacity) {
            std::size_t end = std::min(items.size(), off + capacity);
            groups.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(off),
                                items.begin() + static_cast<std::ptrdiff_t>(end));
        }
        return;
    }
    std::sort(items.begin(), items.end(), [&](std::size_t a, std::size_t b) {
        // Doubled centers stay integral.
        std::int64_t ca = entries[a].mbr.ranges[dim].lo + entries[a].mbr.ranges[dim].hi;
        std::int64_t cb = entries[b].mbr.ranges[dim].lo + entries[b].mbr.ranges[dim].hi;
        if (ca != cb) return ca < cb;
        return a < b;
    });
    std::size_t total_groups = (items.size() + capacity - 1) / capacity;
    std::size_t remaining = dims - dim;
    auto slabs = static_cast<std::size_t>(std::ceil(
        std::pow(static_cast<double>(total_groups), 1.0 / static_cast<double>(remaining))));
    slabs = std::max<std::size_t>(1, slabs);
    std::size_t per_slab = (items.size() + slabs - 1) / slabs;
    for (std::size_t off = 0; off < items.size(); off += per_slab) {
        std::size_t end = std::min(items.size(), off + per_slab);
        std::vector<std::size_t> slab(items.begin() + static_cast<std::ptrdiff_t>(off),
                                      items.begin() + static_cast<std::ptrdiff_t>(end));
        str_tiles(slab, entries, dim + 1, dims, capacity, groups);
    }
}

RTree build_bulk(std::vector<RTreeEntry> leaves, const std::vector<std::size_t>& attrs,
                 const RTreeConfig& cfg, std::size_t num_objects) {
    std::size_t dims = attrs.size();
    std::vector<RTreeNode> nodes;

    std::vector<RTreeEntry> level_entries = std::move(leaves);
    int level = 0;
    RTreeEntry root_entry;
    while (true) {
        std::vector<std::size_t> items(level_entries.size());
        std::iota(items.begin(), items.end(), 0);
        std::vector<std::vector<std::size_t>> groups;
        str_tiles(items, level_entries, 0, dims, cfg.capacity, groups);

        std::vector<RTreeEntry> parents;
        parents.reserve(groups.size());
        for (const auto& g : groups) {
            RTreeNode node;
            node.level = level;
            for (std::size_t i : g) node.entries.push_back(level_entries[i]);
            std::size_t id = nodes.size();
            nodes.push_back(std::move(node));
            parents.push_back(entry_for_node(nodes, id));
        }
        if (parents.size() == 1) {
            root_entry = parents.front();
            break;
        }
        level_entries = std::move(parents);
        ++level;
    }
    std::size_t root = nodes.size() - 1;
    RTree tree = RTreeBuilderAccess::make(std::move(nodes), root, attrs, num_objects);
    RTreeBuilderAccess::set_root_entry(tree, std::move(root_entry));
    return tree;
}

// --- classical insert with split and forced reinsert ------------------

struct Inserter {
    std::vector<RTreeNode> nodes;
    std::size_t root;
    std::size_t capacity;
    std::size_t min_entries;
    std::size_t dims;

    double center_dist2(const RTreeEntry& e, const Rect& ref) const {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            double ce = 0.5 * static_cast<double>(e.mbr.ranges[k].lo + e.mbr.ranges[k].hi);
            double cr = 0.5 * static_cast<double>(ref.ranges[k].lo + ref.ranges[k].hi);
            d2 += (ce - cr) * (ce - cr);
        }
        return d2;
    }

    Rect node_mbr(std::size_t id) const {
        Rect r = nodes[id].entries.front().mbr;
        for (std::size_t i = 1; i < nodes[id].entries.size(); ++i) {
            r = rect_cover(r, nodes[id].entries[i].mbr);
        }
        return r;
    }

    std::size_t choose_child(std::size_t node_id, const RTreeEntry& e) const {
        const RTreeNode& node = nodes[node_id];
        bool children_are_leaves = node.level == 1;
        double best_primary = 0.0, best_area = 0.0, best_enl = 0.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < node.entries.size(); ++i) {
            const RTreeEntry& c = node.entries[i];
            Rect grown = rect_cover(c.mbr, e.mbr);
            double area = rect_area(c.mbr);
            double enlargement = rect_area(grown) - area;
            double primary;
            if (children_are_leaves) {
                // Overlap enlargement against the siblings.
                double before = 0.0, after = 0.0;
                for (std::size_t j = 0; j < node.entries.size(); ++j) {
                    if (j == i) continue;
                    before += rect_overlap(c.mbr, node.entries[j].mbr);
                    after += rect_overlap(grown, node.entries[j].mbr);
                }
                primary = after - before;
            } else {
                primary = enlargement;
            }
            bool better = i == 0 || primary < best_primary ||
                          (primary == best_primary && enlargement < best_enl) ||
                          (primary == best_primary && enlargement == best_enl && area < best_area);
            if (better) {
                best = i;
                best_primary = primary;
                best_area = area;
                best_enl = enlargement;
            }
        }
        return best;
    }

    // R* split: axis by minimum margin sum, distribution by minimum
    // overlap (ties: minimum area).
    RTreeNode split(std::size_t node_id) {
        RTreeNode& node = nodes[node_id];
        std::size_t total = node.entries.size();
        std::size_t m = min_entries;
        std::size_t best_axis = 0;
        bool best_by_hi = false;
        double best_margin = 0.0;
        for (std::size_t axis = 0; axis < dims; ++axis) {
            for (int by_hi = 0; by_hi < 2; ++by_hi) {
                auto sorted = node.entries;
                std::sort(sorted.begin(), sorted.end(), [&](const RTreeEntry& a, const RTreeEntry& b) {
                    std::int64_t ka = by_hi ? a.mbr.ranges[axis].hi : a.mbr.ranges[axis].lo;
                    std::int64_t kb = by_hi ? b.mbr.ranges[axis].hi : b.mbr.ranges[axis].lo;
                    if (ka != kb) return ka < kb;
                    return a.child < b.child;
                });
                double margin_sum = 0.0;
                for (std::size_t split_at = m; split_at + m <= total; ++split_at) {
                    Rect left = sorted[0].mbr, right = sorted[split_at].mbr;
                    for (std::size_t i = 1; i < split_at; ++i) left = rect_cover(left, sorted[i].mbr);
                    for (std::size_t i = split_at + 1; i < total; ++i) {
                        right = rect_cover(right, sorted[i].mbr);
                    }
                    margin_sum += rect_margin(left) + rect_margin(right);
                }
                if ((axis == 0 && by_hi == 0) || margin_sum < best_margin) {
                    best_margin = margin_sum;
                    best_axis = axis;
                    best_by_hi = by_hi != 0;
                }
            }
        }
        auto sorted = node.entries;
        std::sort(sorted.begin(), sorted.end(), [&](const RTreeEntry& a, const RTreeEntry& b) {
            std::int64_t ka = best_by_hi ? a.mbr.ranges[best_axis].hi : a.mbr.ranges[best_axis].lo;
            std::int64_t kb = best_by_hi ? b.mbr.ranges[best_axis].hi : b.mbr.ranges[best_axis].lo;
            if (ka != kb) return ka < kb;
            return a.child < b.child;
        });
        std::size_t best_split = m;
        double best_overlap = 0.0, best_area = 0.0;
        for (std::size_t split_at = m; split_at + m <= total; ++split_at) {
            Rect left = sorted[0].mbr, right = sorted[split_at].mbr;
            for (std::size_t i = 1; i < split_at; ++i) left = rect_cover(left, sorted[i].mbr);
            for (std::size_t i = split_at + 1; i < total; ++i) right = rect_cover(right, sorted[i].mbr);
            double ov = rect_overlap(left, right);
            double area = rect_area(left) + rect_area(right);
            if (split_at == m || ov < best_overlap || (ov == best_overlap && area < best_area)) {
                best_overlap = ov;
                best_area = area;
                best_split = split_at;
            }
        }
        RTreeNode sibling;
        sibling.level = node.level;
        sibling.entries.assign(sorted.begin() + static_cast<std::ptrdiff_t>(best_split), sorted.end());
        node.entries.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(best_split));
        return sibling;
    }

    void insert(RTreeEntry e, int target_level, std::vector<char>& reinserted) {
        // Descend to the target level, remembering the path.
        std::vector<std::size_t> path;       // node ids
        std::vector<std::size_t> path_slot;  // entry slot chosen in each node
        std::size_t cur = root;
        while (nodes[cur].level != target_level) {
            path.push_back(cur);
            std::size_t slot = choose_child(cur, e);
            path_slot.push_back(slot);
            cur = static_cast<std::size_t>(nodes[cur].entries[slot].child);
        }
        nodes[cur].entries.push_back(std::move(e));

        // Refresh MBR/objective bounds along the path.
        auto refresh_path = [&](std::size_t upto) {
            for (std::size_t i = upto; i-- > 0;) {
                nodes[path[i]].entries[path_slot[i]] =
                    entry_for_node(nodes, static_cast<std::size_t>(
                                              nodes[path[i]].entries[path_slot[i]].child));
            }
        };
        refresh_path(path.size());

        // Overflow treatment bottom-up.
        while (nodes[cur].entries.size() > capacity) {
            int level = nodes[cur].level;
            if (cur != root && !reinserted[static_cast<std::size_t>(level)]) {
                reinserted[static_cast<std::size_t>(level)] = 1;
                Rect center_ref = node_mbr(cur);
                auto& entries = nodes[cur].entries;
                std::vector<std::size_t> order(entries.size());
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    double da = center_dist2(entries[a], center_ref);
                    double db = center_dist2(entries[b], center_ref);
                    if (da != db) return da > db;
                    return entries[a].child < entries[b].child;
                });
                std::size_t p = std::max<std::size_t>(1, (capacity * 3) / 10);
                std::vector<RTreeEntry> evicted;
                std::vector<char> evict_mark(entries.size(), 0);
                for (std::size_t i = 0; i < p; ++i) evict_mark[order[i]] = 1;
                std::vector<RTreeEntry> kept;
                for (std::size_t i = 0; i < entries.size(); ++i) {
                    (evict_mark[i] ? evicted : kept).push_back(std::move(entries[i]));
                }
                entries = std::move(kept);
                refresh_path(path.size());
                // Close reinsert: nearest evicted entries first.
                for (auto it = evicted.rbegin(); it != evicted.rend(); ++it) {
                    insert(std::move(*it), level, reinserted);
                }
                return;
            }
            RTreeNode sibling = split(cur);
            std::size_t sibling_id = nodes.size();
            nodes.push_back(std::move(sibling));
            if (cur == root) {
                RTreeNode new_root;
                new_root.level = nodes[cur].level + 1;
                new_root.entries.push_back(entry_for_node(nodes, cur));
                new_root.entries.push_back(entry_for_node(nodes, sibling_id));
                root = nodes.size();
                nodes.push_back(std::move(new_root));
                return;
            }
            std::size_t parent = path.back();
            std::size_t slot = path_slot.back();
            path.pop_back();
            path_slot.pop_back();
            nodes[parent].entries[slot] = entry_for_node(nodes, cur);
            nodes[parent].entries.push_back(entry_for_node(nodes, sibling_id));
            refresh_path(path.size());
            cur = parent;
        }
    }
};

RTree build_insertion(std::vector<RTreeEntry> leaves, const std::vector<std::size_t>& attrs,
                      const RTreeConfig& cfg, std::size_t num_objects) {
    Inserter ins;
    ins.capacity = cfg.capacity;
    ins.min_entries = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                   static_cast<double>(cfg.capacity) * cfg.min_fill));
    ins.dims = attrs.size();
    RTreeNode first;
    first.level = 0;
    ins.nodes.push_back(std::move(first));
    ins.root = 0;

    for (auto& leaf : leaves) {
        std::vector<char> reinserted(64, 0);
        ins.insert(std::move(leaf), 0, reinserted);
    }

    std::size_t root = ins.root;
    RTreeEntry root_entry = entry_for_node(ins.nodes, root);
    RTree tree = RTreeBuilderAccess::make(std::move(ins.nodes), root, attrs, num_objects);
    RTreeBuilderAccess::set_root_entry(tree, std::move(root_entry));
    return tree;
}

}  // namespace

RTree RTree::build(const Dataset& ds, const std::vector<std::size_t>& attrs_in,
                   const RTreeConfig& cfg) {
    if (ds.objects.empty()) throw std::invalid_argument("cannot index an empty object set");
    std::vector<std::size_t> attrs = attrs_in;
    if (attrs.empty()) {
        attrs.resize(ds.dims());
        std::iota(attrs.begin(), attrs.end(), 0);
    }
    std::vector<RTreeEntry> leaves;
    leaves.reserve(ds.objects.size());
    for (std::size_t i = 0; i < ds.objects.size(); ++i) {
        std::vector<Rect> rects = transform(ds, ds.objects[i], attrs);
        RTreeEntry e;
        e.child = ~static_cast<std::int32_t>(i);
        e.mbr = rects.front();
        for (std::size_t r = 1; r < rects.size(); ++r) e.mbr = rect_cover(e.mbr, rects[r]);
        e.objective_max = ds.objects[i].objective;
        leaves.push_back(std::move(e));
    }
    RTree tree = cfg.build == RTreeConfig::Build::kBulkLoad
                     ? build_bulk(std::move(leaves), attrs, cfg, ds.objects.size())
                     : build_insertion(std::move(leaves), attrs, cfg, ds.objects.size());
    tree.object_ids_.reserve(ds.objects.size());
    for (const auto& o : ds.objects) tree.object_ids_.push_back(o.id);
    return tree;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string RTree::dump() const {
    std::ostringstream os;
    os << "# gcp-index v1\n";
    os << "attrs";
    for (std::size_t a : attrs_) os << ' ' << a;
    os << '\n';
    os << "objects " << num_objects_ << '\n';
    os << "root " << root_ << '\n';
    os << "nodes " << nodes_.size() << '\n';
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        const RTreeNode& node = nodes_[id];
        os << "node " << id << ' ' << node.level << ' ' << node.entries.size() << '\n';
        for (const auto& e : node.entries) {
            os << "e " << (e.is_object() ? 'O' : 'N');
            for (const auto& iv : e.mbr.ranges) os << ' ' << iv.lo << ' ' << iv.hi;
            for (double v : e.objective_max) os << ' ' << fmt_double(v);
            // Object ids may contain spaces, so they close the line.
            if (e.is_object()) {
                os << ' ' << object_ids_.at(e.object_index());
            } else {
                os << ' ' << e.child;
            }
            os << '\n';
        }
    }
    return os.str();
}

RTree RTree::load(const std::string& text, const Dataset& ds) {
    RTree tree;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "# gcp-index v1") {
        throw std::runtime_error("unrecognized index dump header");
    }
    std::unordered_map<std::string, std::size_t> object_index;
    for (std::size_t i = 0; i < ds.objects.size(); ++i) object_index[ds.objects[i].id] = i;
    std::size_t num_objective = ds.objective_names.size();

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "attrs") {
            std::size_t a;
            while (ls >> a) tree.attrs_.push_back(a);
        } else if (tok == "objects") {
            ls >> tree.num_objects_;
        } else if (tok == "root") {
            ls >> tree.root_;
        } else if (tok == "nodes") {
            std::size_t count;
            ls >> count;
            tree.nodes_.reserve(count);
        } else if (tok == "node") {
            std::size_t id, entry_count;
            int level;
            ls >> id >> level >> entry_count;
            if (id != tree.nodes_.size()) throw std::runtime_error("index dump out of order");
            RTreeNode node;
            node.level = level;
            node.entries.reserve(entry_count);
            tree.nodes_.push_back(std::move(node));
        } else if (tok == "e") {
            if (tree.nodes_.empty()) throw std::runtime_error("entry before any node");
            RTreeNode& node = tree.nodes_.back();
            std::string kind;
            ls >> kind;
            RTreeEntry e;
            e.mbr.ranges.resize(tree.attrs_.size());
            for (auto& iv : e.mbr.ranges) ls >> iv.lo >> iv.hi;
            e.objective_max.resize(num_objective);
            for (auto& v : e.objective_max) ls >> v;
            if (kind == "N") {
                ls >> e.child;
            } else if (kind == "O") {
                std::string id;
                std::getline(ls, id);
                if (!id.empty() && id.front() == ' ') id.erase(0, 1);
                auto it = object_index.find(id);
                if (it == object_index.end()) {
                    throw std::runtime_error("index dump references unknown object '" + id + "'");
                }
                e.child = ~static_cast<std::int32_t>(it->second);
            } else {
                throw std::runtime_error("bad entry kind '" + kind + "'");
            }
            node.entries.push_back(std::move(e));
        } else {
            throw std::runtime_error("unrecognized token '" + tok + "' in index dump");
        }
    }
    if (tree.nodes_.empty()) throw std::runtime_error("index dump has no nodes");
    tree.object_ids_.reserve(ds.objects.size());
    for (const auto& o : ds.objects) tree.object_ids_.push_back(o.id);
    tree.root_entry_ = entry_for_node(tree.nodes_, tree.root_);
    return tree;
}

}  // namespace gcp
