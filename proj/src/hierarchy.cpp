#include "gcp/hierarchy.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace gcp {

namespace {

std::string err(const std::string& source, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << source << ":" << line << ": " << msg;
    return os.str();
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \r\n");
    return s.substr(b, e - b + 1);
}

// Depth-first walk over all edges in declared child order; returns nodes
// in first-visit order and records the visiting (spanning-tree) parent.
void spanning_dfs(const Hierarchy& h, std::vector<int>& visit_order, std::vector<int>& tree_parent) {
    visit_order.clear();
    tree_parent.assign(h.nodes.size(), -1);
    std::vector<char> seen(h.nodes.size(), 0);
    // Explicit stack of (node, next child position) keeps child order stable.
    std::vector<std::pair<int, std::size_t>> stack;
    seen[h.root] = 1;
    visit_order.push_back(h.root);
    stack.emplace_back(h.root, 0);
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        const auto& children = h.nodes[node].children;
        if (next >= children.size()) {
            stack.pop_back();
            continue;
        }
        int child = children[next++];
        if (!seen[child]) {
            seen[child] = 1;
            tree_parent[child] = node;
            visit_order.push_back(child);
            stack.emplace_back(child, 0);
        }
    }
}

void check_acyclic(const std::vector<HierarchyNode>& nodes, int root, const std::string& source) {
    // Iterative three-color DFS.
    std::vector<char> color(nodes.size(), 0);
    std::vector<std::pair<int, std::size_t>> stack;
    color[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        const auto& children = nodes[node].children;
        if (next >= children.size()) {
            color[node] = 2;
            stack.pop_back();
            continue;
        }
        int child = children[next++];
        if (color[child] == 1) {
            throw ParseError(source + ": cycle detected through node '" + nodes[child].label + "'");
        }
        if (color[child] == 0) {
            color[child] = 1;
            stack.emplace_back(child, 0);
        }
    }
}

}  // namespace

int Hierarchy::node_by_label(const std::string& label) const {
    auto it = label_index.find(label);
    if (it == label_index.end()) {
        throw ParseError("unknown hierarchy label '" + label + "' in attribute '" + attribute_name + "'");
    }
    return it->second;
}

std::size_t Hierarchy::num_leaves() const {
    std::size_t n = 0;
    for (const auto& node : nodes) {
        if (node.is_leaf()) ++n;
    }
    return n;
}

Hierarchy parse_hierarchy(const std::string& text, const std::string& source, const ParseOptions& opts) {
    Hierarchy h;
    struct ExtraEdge {
        std::string child, parent;
        std::size_t line;
    };
    std::vector<ExtraEdge> extras;
    std::vector<int> depth_stack;  // depth_stack[d] = last node seen at depth d

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line.rfind("#extra\t", 0) == 0) {
            auto fields = split_tabs(line);
            if (fields.size() != 3) throw ParseError(err(source, line_no, "malformed #extra line"));
            extras.push_back({trim(fields[1]), trim(fields[2]), line_no});
            continue;
        }
        if (line[0] == '#') continue;

        auto fields = split_tabs(line);
        if (fields.size() != 2) throw ParseError(err(source, line_no, "expected depth<TAB>label"));
        std::size_t depth = 0;
        try {
            depth = static_cast<std::size_t>(std::stoul(fields[0]));
        } catch (const std::exception&) {
            throw ParseError(err(source, line_no, "invalid depth '" + fields[0] + "'"));
        }
        std::string label = trim(fields[1]);
        if (label.empty()) throw ParseError(err(source, line_no, "empty label"));
        if (h.label_index.count(label)) {
            throw ParseError(err(source, line_no, "duplicate label '" + label + "'"));
        }

        if (depth == 0 && h.root >= 0) throw ParseError(err(source, line_no, "multiple roots"));
        if (depth > 0 && depth > depth_stack.size()) {
            throw ParseError(err(source, line_no, "depth jumps past parent level"));
        }

        int id = static_cast<int>(h.nodes.size());
        h.nodes.push_back(HierarchyNode{label, {}, {}});
        h.label_index.emplace(label, id);
        if (depth == 0) {
            h.root = id;
        } else {
            int parent = depth_stack[depth - 1];
            h.nodes[id].parents.push_back(parent);
            h.nodes[parent].children.push_back(id);
        }
        depth_stack.resize(depth);
        depth_stack.push_back(id);
    }

    if (h.nodes.empty()) throw ParseError(source + ": empty document");
    if (h.root < 0) throw ParseError(source + ": no root node");

    for (const auto& e : extras) {
        auto ci = h.label_index.find(e.child);
        auto pi = h.label_index.find(e.parent);
        if (ci == h.label_index.end()) {
            throw ParseError(err(source, e.line, "unknown child label '" + e.child + "'"));
        }
        if (pi == h.label_index.end()) {
            throw ParseError(err(source, e.line, "unknown parent label '" + e.parent + "'"));
        }
        int child = ci->second, parent = pi->second;
        if (child == parent) throw ParseError(err(source, e.line, "cycle detected through node '" + e.child + "'"));
        auto& kids = h.nodes[parent].children;
        if (std::find(kids.begin(), kids.end(), child) != kids.end()) {
            throw ParseError(err(source, e.line, "duplicate edge"));
        }
        kids.push_back(child);
        h.nodes[child].parents.push_back(parent);
        h.is_dag = true;
    }

    check_acyclic(h.nodes, h.root, source);

    // Nodes unreachable from the root are rejected rather than ignored.
    {
        std::vector<int> order, parent;
        spanning_dfs(h, order, parent);
        if (order.size() != h.nodes.size()) {
            throw ParseError(source + ": node not reachable from the root");
        }
    }

    if (opts.lexicographic_children) {
        for (auto& node : h.nodes) {
            std::sort(node.children.begin(), node.children.end(),
                      [&](int a, int b) { return h.nodes[a].label < h.nodes[b].label; });
        }
    }

    // Collapse single-child chains: the collapsed node keeps the child's
    // label, the parent label stays resolvable as an alias.
    std::vector<char> dead(h.nodes.size(), 0);
    std::vector<int> merged_into(h.nodes.size(), -1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int id = 0; id < static_cast<int>(h.nodes.size()); ++id) {
            if (dead[id] || h.nodes[id].children.size() != 1) continue;
            int child = h.nodes[id].children[0];
            // Merge `id` into `child`.
            auto& cp = h.nodes[child].parents;
            cp.erase(std::remove(cp.begin(), cp.end(), id), cp.end());
            for (int gp : h.nodes[id].parents) {
                auto& gpc = h.nodes[gp].children;
                std::replace(gpc.begin(), gpc.end(), id, child);
                if (std::find(cp.begin(), cp.end(), gp) == cp.end()) cp.push_back(gp);
            }
            if (h.root == id) h.root = child;
            dead[id] = 1;
            merged_into[id] = child;
            h.nodes[id].children.clear();
            h.nodes[id].parents.clear();
            changed = true;
        }
    }

    // Compact away collapsed nodes; alias labels follow the merge chain.
    if (std::find(dead.begin(), dead.end(), 1) != dead.end()) {
        std::vector<int> remap(h.nodes.size(), -1);
        std::vector<HierarchyNode> compact;
        for (int id = 0; id < static_cast<int>(h.nodes.size()); ++id) {
            if (!dead[id]) {
                remap[id] = static_cast<int>(compact.size());
                compact.push_back(std::move(h.nodes[id]));
            }
        }
        for (auto& node : compact) {
            for (auto& c : node.children) c = remap[c];
            for (auto& p : node.parents) p = remap[p];
        }
        for (auto& [label, id] : h.label_index) {
            int cur = id;
            while (dead[cur]) cur = merged_into[cur];
            id = remap[cur];
        }
        h.nodes = std::move(compact);
        h.root = remap[h.root];
    }

    h.attribute_name = h.nodes[h.root].label;

    // Detect whether any node still has multiple parents.
    h.is_dag = false;
    for (const auto& node : h.nodes) {
        if (node.parents.size() > 1) h.is_dag = true;
        if (!node.is_leaf() && node.children.size() < 2) {
            throw ParseError(source + ": internal node '" + node.label + "' has a single child after collapsing");
        }
    }
    return h;
}

IntervalLabeling label_tree(const Hierarchy& h) {
    for (const auto& node : h.nodes) {
        if (node.parents.size() > 1) {
            throw std::invalid_argument("label_tree: hierarchy is a DAG; use label_dag");
        }
    }
    IntervalLabeling lab;
    lab.node_intervals.resize(h.nodes.size());
    lab.leaf_counts.assign(h.nodes.size(), 0);

    std::vector<int> order, parent;
    spanning_dfs(h, order, parent);

    std::int64_t next_leaf = 0;
    // Reverse first-visit order is a valid bottom-up order for a tree,
    // but leaves must be numbered in visit order, so do two passes.
    for (int node : order) {
        if (h.nodes[node].is_leaf()) {
            lab.node_intervals[node].add(next_leaf, next_leaf + 1);
            ++next_leaf;
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int node = *it;
        if (h.nodes[node].is_leaf()) continue;
        std::int64_t lo = -1, hi = -1;
        for (int child : h.nodes[node].children) {
            const auto& parts = lab.node_intervals[child].parts();
            assert(parts.size() == 1);
            if (lo < 0 || parts.front().lo < lo) lo = parts.front().lo;
            if (parts.back().hi > hi) hi = parts.back().hi;
        }
        lab.node_intervals[node].add(lo, hi);
    }
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        lab.leaf_counts[i] = lab.node_intervals[i].total_length();
    }
    lab.domain_size = next_leaf;
    return lab;
}

IntervalLabeling label_dag(const Hierarchy& h) {
    IntervalLabeling lab;
    lab.node_intervals.resize(h.nodes.size());
    lab.leaf_counts.assign(h.nodes.size(), 0);

    std::vector<int> order, parent;
    spanning_dfs(h, order, parent);

    std::int64_t next_leaf = 0;
    for (int node : order) {
        if (h.nodes[node].is_leaf()) {
            lab.node_intervals[node].add(next_leaf, next_leaf + 1);
            ++next_leaf;
        }
    }

    // Bottom-up over the full DAG: children before parents.
    std::vector<int> pending(h.nodes.size(), 0);
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        pending[i] = static_cast<int>(h.nodes[i].children.size());
    }
    std::vector<int> ready;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        if (pending[i] == 0) ready.push_back(static_cast<int>(i));
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        int node = ready.back();
        ready.pop_back();
        ++done;
        if (!h.nodes[node].is_leaf()) {
            for (int child : h.nodes[node].children) {
                lab.node_intervals[node].merge(lab.node_intervals[child]);
            }
        }
        for (int p : h.nodes[node].parents) {
            if (--pending[p] == 0) ready.push_back(p);
        }
    }
    assert(done == h.nodes.size());

    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        lab.leaf_counts[i] = lab.node_intervals[i].total_length();
    }
    lab.domain_size = next_leaf;
    return lab;
}

IntervalLabeling label_hierarchy(const Hierarchy& h) {
    return h.is_dag ? label_dag(h) : label_tree(h);
}

std::vector<int> reachable_leaves(const Hierarchy& h, int node) {
    std::vector<int> out;
    std::vector<char> seen(h.nodes.size(), 0);
    std::vector<int> stack{node};
    seen[node] = 1;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        if (h.nodes[cur].is_leaf()) out.push_back(cur);
        for (int child : h.nodes[cur].children) {
            if (!seen[child]) {
                seen[child] = 1;
                stack.push_back(child);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string serialize_hierarchy(const Hierarchy& h) {
    std::ostringstream os;
    os << "# gcp-hierarchy v1\n";
    std::vector<int> order, tree_parent;
    spanning_dfs(h, order, tree_parent);
    std::vector<int> depth(h.nodes.size(), 0);
    // Emit the spanning tree in DFS order with depths.
    std::vector<std::string> extra_lines;
    std::vector<std::pair<int, std::size_t>> walk{{h.root, 0}};
    os << 0 << '\t' << h.nodes[h.root].label << '\n';
    std::vector<char> emitted(h.nodes.size(), 0);
    emitted[h.root] = 1;
    depth[h.root] = 0;
    while (!walk.empty()) {
        auto& [node, next] = walk.back();
        const auto& children = h.nodes[node].children;
        if (next >= children.size()) {
            walk.pop_back();
            continue;
        }
        int child = children[next++];
        if (tree_parent[child] == node && !emitted[child]) {
            emitted[child] = 1;
            depth[child] = depth[node] + 1;
            os << depth[child] << '\t' << h.nodes[child].label << '\n';
            walk.emplace_back(child, 0);
        } else {
            extra_lines.push_back("#extra\t" + h.nodes[child].label + '\t' + h.nodes[node].label);
        }
    }
    for (const auto& line : extra_lines) os << line << '\n';
    return os.str();
}

}  // namespace gcp
