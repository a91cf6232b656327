#include "gcp/synthetic.hpp"

#include <sstream>
#include <stdexcept>

namespace gcp {

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling over the engine's full 64-bit output.
    std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

namespace {

// Complete binary tree document; node n1 is the root, node n{2i}/n{2i+1}
// are the children of n{i}.  The root keeps the attribute name so CSV
// columns match.
std::string binary_tree_doc(const std::string& attr_name, std::size_t height) {
    std::ostringstream os;
    os << "# gcp-hierarchy v1\n";
    // Iterative preorder with explicit depth.
    struct Item {
        std::size_t id;
        std::size_t depth;
    };
    std::vector<Item> stack{{1, 0}};
    std::size_t first_leaf = std::size_t{1} << height;
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.id == 1) {
            os << 0 << '\t' << attr_name << '\n';
        } else {
            os << it.depth << '\t' << 'n' << it.id << '\n';
        }
        if (it.id < first_leaf) {
            stack.push_back({it.id * 2 + 1, it.depth + 1});
            stack.push_back({it.id * 2, it.depth + 1});
        }
    }
    return os.str();
}

}  // namespace

Dataset gen_synthetic(const SyntheticConfig& cfg) {
    if (cfg.hierarchy_height < 1) throw std::invalid_argument("hierarchy height must be >= 1");
    if (cfg.object_level < 1 || cfg.object_level > cfg.hierarchy_height) {
        throw std::invalid_argument("object level out of range");
    }
    if (cfg.user_level < 1 || cfg.user_level > cfg.hierarchy_height) {
        throw std::invalid_argument("user level out of range");
    }
    if (cfg.num_attributes < 1 || cfg.num_attributes > 64) {
        throw std::invalid_argument("attribute count out of range");
    }

    Dataset ds;
    for (std::size_t k = 0; k < cfg.num_attributes; ++k) {
        AttributeSchema schema;
        schema.name = "attr" + std::to_string(k + 1);
        schema.hierarchy = parse_hierarchy(binary_tree_doc(schema.name, cfg.hierarchy_height),
                                           schema.name + ".hier");
        schema.labeling = label_hierarchy(schema.hierarchy);
        ds.attributes.push_back(std::move(schema));
    }

    // Level l holds 2^(height - l + 1) nodes (level 1 = leaves); their
    // breadth-first ids form one contiguous block.
    auto level_block = [&](std::size_t level) {
        std::size_t depth = cfg.hierarchy_height - (level - 1);
        std::size_t first = std::size_t{1} << depth;
        std::size_t count = std::size_t{1} << depth;
        return std::pair<std::size_t, std::size_t>(first, count);
    };

    std::mt19937_64 rng(cfg.seed);
    auto draw_node = [&](const AttributeSchema& schema, std::size_t level) {
        auto [first, count] = level_block(level);
        std::size_t id = first + bounded_rand(rng, count);
        return schema.hierarchy.node_by_label("n" + std::to_string(id));
    };

    ds.objects.reserve(cfg.num_objects);
    for (std::size_t i = 0; i < cfg.num_objects; ++i) {
        ObjectRecord o;
        o.id = "s" + std::to_string(i + 1);
        o.values.reserve(cfg.num_attributes);
        for (std::size_t k = 0; k < cfg.num_attributes; ++k) {
            o.values.push_back({draw_node(ds.attributes[k], cfg.object_level)});
        }
        ds.objects.push_back(std::move(o));
    }
    ds.users.reserve(cfg.group_size);
    for (std::size_t j = 0; j < cfg.group_size; ++j) {
        UserPrefs u;
        u.id = "u" + std::to_string(j + 1);
        u.values.reserve(cfg.num_attributes);
        for (std::size_t k = 0; k < cfg.num_attributes; ++k) {
            u.values.push_back(std::vector<int>{draw_node(ds.attributes[k], cfg.user_level)});
        }
        ds.users.push_back(std::move(u));
    }
    return ds;
}

}  // namespace gcp
