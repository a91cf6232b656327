// Object catalog, user preferences and matching-vector computation.
//
// A matching degree compares one object value against one user value
// through a set-similarity function over leaf-set cardinalities; the
// cardinalities come from the hierarchy interval labeling.  Multi-valued
// attributes take the best match over all value pairs.  Indifferent
// attributes match with degree 1.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcp/degree.hpp"
#include "gcp/hierarchy.hpp"

namespace gcp {

struct AttributeSchema {
    std::string name;
    Hierarchy hierarchy;
    IntervalLabeling labeling;
};

struct ObjectRecord {
    std::string id;
    // Per subjective attribute: a non-empty set of hierarchy node ids.
    std::vector<std::vector<int>> values;
    // Per objective attribute, aligned with Dataset::objective_names.
    std::vector<double> objective;
};

struct UserPrefs {
    std::string id;
    // Per subjective attribute: node ids, or nullopt for indifference.
    std::vector<std::optional<std::vector<int>>> values;

    bool indifferent(std::size_t attr) const { return !values[attr].has_value(); }
    std::size_t specified_count() const;
};

struct Dataset {
    std::vector<AttributeSchema> attributes;
    std::vector<std::string> objective_names;
    std::vector<ObjectRecord> objects;
    std::vector<UserPrefs> users;

    std::size_t dims() const { return attributes.size(); }
    int object_index(const std::string& id) const;
    void validate() const;
};

// Degree assigned to attributes the user is indifferent about.  The
// default follows the matching-vector definition; the zero variant is
// the documented alternative used when newly joining users should not
// start ahead of everyone (participation, version 2).
enum class IndifferentPolicy { kOne, kZero };

struct MatchOptions {
    SimilarityFunction similarity = SimilarityFunction::jaccard();
    // Multi-valued reduction; max is the defined semantics, min/avg are
    // configuration switches only.
    enum class MultiValue { kMax, kMin, kAvg } multi_value = MultiValue::kMax;
    IndifferentPolicy indifferent = IndifferentPolicy::kOne;
};

// Matching degree of object `o` to user `u` on attribute `attr`.
Degree matching_degree(const Dataset& ds, const ObjectRecord& o, const UserPrefs& u,
                       std::size_t attr, const MatchOptions& opts = {});

// One matching vector (all attributes) plus its norm.
struct MatchingVector {
    std::vector<Degree> degrees;
    double norm = 0.0;
};

MatchingVector matching_vector(const Dataset& ds, const ObjectRecord& o, const UserPrefs& u,
                               const MatchOptions& opts = {});

// |O| x |U| table of matching vectors in flat storage.  Rows are objects;
// a cell is the d-degree span for one (object, user) pair.  Specified-
// attribute masks are kept per user so dominance checks can skip
// indifferent coordinates.
class DegreeTable {
public:
    DegreeTable() = default;

    static DegreeTable compute(const Dataset& ds, const MatchOptions& opts = {});

    // Builds a table from raw degree values (value injection for the
    // ranking axiom suites).  Attributes count as specified unless a
    // per-user mask says otherwise.
    static DegreeTable inject(std::size_t num_objects, std::size_t num_users, std::size_t dims,
                              const std::vector<std::vector<std::vector<Degree>>>& cells,
                              const std::vector<std::uint64_t>& masks = {});

    std::size_t num_objects() const { return num_objects_; }
    std::size_t num_users() const { return num_users_; }
    std::size_t dims() const { return dims_; }

    std::span<const Degree> degrees(std::size_t object, std::size_t user) const {
        return {cells_.data() + (object * num_users_ + user) * dims_, dims_};
    }
    std::span<Degree> mutable_degrees(std::size_t object, std::size_t user) {
        return {cells_.data() + (object * num_users_ + user) * dims_, dims_};
    }
    double norm(std::size_t object, std::size_t user) const {
        return norms_[object * num_users_ + user];
    }
    // Sum over users of the vector norms (the monotone composite key).
    double norm_sum(std::size_t object) const;

    std::uint64_t specified_mask(std::size_t user) const { return specified_[user]; }

    void refresh_norms();

private:
    std::size_t num_objects_ = 0, num_users_ = 0, dims_ = 0;
    std::vector<Degree> cells_;
    std::vector<double> norms_;
    std::vector<std::uint64_t> specified_;
};

}  // namespace gcp
