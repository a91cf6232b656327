// Attribute hierarchies (trees and DAGs) and their interval labelings.
//
// A hierarchy is parsed from a line-based document, validated (single
// root, acyclic, no duplicate labels, internal nodes with at least two
// children after single-child chains are collapsed), and then labeled:
// the i-th leaf in depth-first order receives [i-1, i), internal nodes
// receive the union of the intervals of their reachable leaves.  For a
// tree this union is a single covering interval; for a DAG a node may
// carry several disjoint intervals.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcp/intervals.hpp"

namespace gcp {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HierarchyNode {
    std::string label;
    std::vector<int> parents;
    std::vector<int> children;  // declared order; first entries are tree edges

    bool is_leaf() const { return children.empty(); }
};

struct Hierarchy {
    std::string attribute_name;
    std::vector<HierarchyNode> nodes;
    int root = -1;
    bool is_dag = false;
    // Labels (and aliases of collapsed single-child chains) to node ids.
    std::unordered_map<std::string, int> label_index;

    int node_by_label(const std::string& label) const;
    std::size_t num_leaves() const;
};

struct ParseOptions {
    // Children keep document order by default; lexicographic ordering can
    // be forced so labelings are reproducible independent of the layout.
    bool lexicographic_children = false;
};

// Parses the hierarchy file format: one node per line, `depth<TAB>label`,
// `#` comments, and an optional `#extra<TAB>child<TAB>parent` section for
// DAG edges.  `source` names the document in error messages.
Hierarchy parse_hierarchy(const std::string& text, const std::string& source = "<input>",
                          const ParseOptions& opts = {});

struct IntervalLabeling {
    std::vector<IntervalSet> node_intervals;  // by node id
    std::vector<std::int64_t> leaf_counts;    // by node id
    std::int64_t domain_size = 0;             // number of distinct leaves

    const IntervalSet& intervals(int node) const { return node_intervals.at(node); }
    std::int64_t leaf_count(int node) const { return leaf_counts.at(node); }
};

// Labels a tree: leaf i gets [i-1, i); each internal node the single
// covering interval of its children.  Throws if the hierarchy is a DAG.
IntervalLabeling label_tree(const Hierarchy& h);

// Labels a DAG: spanning tree by depth-first traversal (declared child
// order, first visit wins) fixes leaf positions; every node then carries
// the merged intervals of all leaves reachable through any edge.  On a
// tree this coincides with label_tree.
IntervalLabeling label_dag(const Hierarchy& h);

// label_dag for DAGs, label_tree otherwise.
IntervalLabeling label_hierarchy(const Hierarchy& h);

// Leaves reachable from `node` via any edge, as leaf ordinals of the
// labeling's leaf order (independent reachability route, used by audits).
std::vector<int> reachable_leaves(const Hierarchy& h, int node);

std::string serialize_hierarchy(const Hierarchy& h);

}  // namespace gcp
