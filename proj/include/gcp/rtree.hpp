// Rectangle index over interval-transformed objects.
//
// Every object maps to one or more rectangles in the product of the
// labeled attribute domains (one rectangle per combination of
// multi-values; DAG values contribute one choice per interval).  The
// tree stores one leaf entry per object whose MBR encloses all of its
// virtual rectangles.  Construction is a deterministic sort-tile-
// recursive bulk load by default; classical insert with split and
// forced reinsert is available behind a flag.  Entries carry per-
// objective maxima so dominance-based pruning stays sound when
// objective attributes are present.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcp/model.hpp"

namespace gcp {

// Closed-open box in interval coordinates, one range per indexed
// attribute.
struct Rect {
    std::vector<Interval> ranges;

    bool operator==(const Rect&) const = default;
};

// All virtual rectangles of one object over the given attribute subset
// (indices into ds.attributes).  Single-valued tree attributes yield
// exactly one rectangle.
std::vector<Rect> transform(const Dataset& ds, const ObjectRecord& o,
                            const std::vector<std::size_t>& attrs);

// Convenience: full attribute set.
std::vector<Rect> transform(const Dataset& ds, const ObjectRecord& o);

struct RTreeEntry {
    Rect mbr;
    // Non-negative: child node id.  Negative: leaf entry for object
    // index ~child.
    std::int32_t child = 0;
    // Upper bound of each objective attribute over the enclosed objects.
    std::vector<double> objective_max;

    bool is_object() const { return child < 0; }
    std::size_t object_index() const { return static_cast<std::size_t>(~child); }
};

struct RTreeNode {
    int level = 0;  // 0 = leaf node (entries reference objects)
    std::vector<RTreeEntry> entries;
};

struct RTreeConfig {
    std::size_t capacity = 64;
    // Fraction of capacity kept as minimum fill on splits.
    double min_fill = 0.4;
    enum class Build { kBulkLoad, kInsert } build = Build::kBulkLoad;
};

class RTree {
public:
    // Indexes all dataset objects over the attribute subset (empty =
    // every subjective attribute).  Throws on an empty object set.
    static RTree build(const Dataset& ds, const std::vector<std::size_t>& attrs,
                       const RTreeConfig& cfg = {});

    const std::vector<RTreeNode>& nodes() const { return nodes_; }
    const RTreeNode& node(std::size_t id) const { return nodes_[id]; }
    std::size_t root() const { return root_; }
    const std::vector<std::size_t>& indexed_attrs() const { return attrs_; }
    const RTreeEntry& root_entry() const { return root_entry_; }
    std::size_t num_objects() const { return num_objects_; }

    // Line-based dump; dump -> load -> dump is byte-identical.
    std::string dump() const;
    static RTree load(const std::string& text, const Dataset& ds);

private:
    std::vector<RTreeNode> nodes_;
    std::size_t root_ = 0;
    std::vector<std::size_t> attrs_;
    RTreeEntry root_entry_;  // MBR over the whole tree
    std::size_t num_objects_ = 0;
    std::vector<std::string> object_ids_;  // catalog order, for the dump

    friend struct RTreeBuilderAccess;
};

// MBR helpers.
Rect rect_cover(const Rect& a, const Rect& b);
bool rect_contains(const Rect& outer, const Rect& inner);

}  // namespace gcp
