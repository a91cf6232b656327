#include "gcp/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcp {

SimilarityFunction similarity_from_name(const std::string& name) {
    if (name == "jaccard") return SimilarityFunction::jaccard();
    if (name == "overlap") return SimilarityFunction::overlap();
    if (name == "dice") return SimilarityFunction::dice();
    throw std::invalid_argument("unknown similarity function '" + name + "'");
}

std::string similarity_name(const SimilarityFunction& f) {
    switch (f.kind) {
        case Similarity::kJaccard:
            return "jaccard";
        case Similarity::kOverlap:
            return "overlap";
        case Similarity::kDice:
            return "dice";
        case Similarity::kCustom:
            return "custom";
    }
    return "?";
}

std::size_t UserPrefs::specified_count() const {
    std::size_t n = 0;
    for (const auto& v : values) {
        if (v.has_value()) ++n;
    }
    return n;
}

int Dataset::object_index(const std::string& id) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (objects[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

void Dataset::validate() const {
    for (const auto& o : objects) {
        if (o.values.size() != attributes.size()) {
            throw std::invalid_argument("object '" + o.id + "' is not defined over all attributes");
        }
        for (std::size_t k = 0; k < o.values.size(); ++k) {
            if (o.values[k].empty()) {
                throw std::invalid_argument("object '" + o.id + "' has no value for attribute '" +
                                            attributes[k].name + "'");
            }
            for (int node : o.values[k]) {
                if (node < 0 || node >= static_cast<int>(attributes[k].hierarchy.nodes.size())) {
                    throw std::invalid_argument("object '" + o.id + "' references an unknown node");
                }
            }
        }
        if (o.objective.size() != objective_names.size()) {
            throw std::invalid_argument("object '" + o.id + "' is missing objective values");
        }
    }
    for (const auto& u : users) {
        if (u.values.size() != attributes.size()) {
            throw std::invalid_argument("user '" + u.id + "' has a wrong attribute count");
        }
        if (u.specified_count() == 0) {
            throw std::invalid_argument("user '" + u.id + "' specifies no attribute");
        }
        for (std::size_t k = 0; k < u.values.size(); ++k) {
            if (!u.values[k].has_value()) continue;
            if (u.values[k]->empty()) {
                throw std::invalid_argument("user '" + u.id + "' has an empty value set");
            }
            for (int node : *u.values[k]) {
                if (node < 0 || node >= static_cast<int>(attributes[k].hierarchy.nodes.size())) {
                    throw std::invalid_argument("user '" + u.id + "' references an unknown node");
                }
            }
        }
    }
}

Degree matching_degree(const Dataset& ds, const ObjectRecord& o, const UserPrefs& u,
                       std::size_t attr, const MatchOptions& opts) {
    if (attr >= ds.attributes.size()) throw std::invalid_argument("unknown attribute index");
    if (u.indifferent(attr)) {
        return opts.indifferent == IndifferentPolicy::kOne ? Degree::one() : Degree::zero();
    }
    const IntervalLabeling& lab = ds.attributes[attr].labeling;
    const auto& ovals = o.values[attr];
    const auto& uvals = *u.values[attr];

    bool first = true;
    Degree best;
    double avg_acc = 0.0;
    std::size_t pairs = 0;
    for (int ov : ovals) {
        for (int uv : uvals) {
            Degree d = opts.similarity.apply(set_cardinalities(lab.intervals(ov), lab.intervals(uv)));
            switch (opts.multi_value) {
                case MatchOptions::MultiValue::kMax:
                    if (first || best < d) best = d;
                    break;
                case MatchOptions::MultiValue::kMin:
                    if (first || d < best) best = d;
                    break;
                case MatchOptions::MultiValue::kAvg:
                    avg_acc += d.value();
                    ++pairs;
                    break;
            }
            first = false;
        }
    }
    if (opts.multi_value == MatchOptions::MultiValue::kAvg) {
        // Average collapses to an approximate rational on a fixed scale.
        constexpr std::int64_t kScale = 1'000'000'000;
        return Degree(static_cast<std::int64_t>(avg_acc / static_cast<double>(pairs) * kScale), kScale);
    }
    return best;
}

MatchingVector matching_vector(const Dataset& ds, const ObjectRecord& o, const UserPrefs& u,
                               const MatchOptions& opts) {
    MatchingVector mv;
    mv.degrees.reserve(ds.dims());
    for (std::size_t k = 0; k < ds.dims(); ++k) {
        Degree d = matching_degree(ds, o, u, k, opts);
        mv.norm += d.value();
        mv.degrees.push_back(d);
    }
    return mv;
}

DegreeTable DegreeTable::compute(const Dataset& ds, const MatchOptions& opts) {
    DegreeTable t;
    t.num_objects_ = ds.objects.size();
    t.num_users_ = ds.users.size();
    t.dims_ = ds.dims();
    if (t.dims_ > 64) throw std::invalid_argument("more than 64 attributes are not supported");
    t.cells_.resize(t.num_objects_ * t.num_users_ * t.dims_);
    t.norms_.resize(t.num_objects_ * t.num_users_);
    t.specified_.resize(t.num_users_, 0);
    for (std::size_t j = 0; j < t.num_users_; ++j) {
        for (std::size_t k = 0; k < t.dims_; ++k) {
            if (!ds.users[j].indifferent(k)) t.specified_[j] |= (1ull << k);
        }
    }
    for (std::size_t i = 0; i < t.num_objects_; ++i) {
        for (std::size_t j = 0; j < t.num_users_; ++j) {
            double norm = 0.0;
            Degree* cell = t.cells_.data() + (i * t.num_users_ + j) * t.dims_;
            for (std::size_t k = 0; k < t.dims_; ++k) {
                Degree d = matching_degree(ds, ds.objects[i], ds.users[j], k, opts);
                cell[k] = d;
                norm += d.value();
            }
            t.norms_[i * t.num_users_ + j] = norm;
        }
    }
    return t;
}

DegreeTable DegreeTable::inject(std::size_t num_objects, std::size_t num_users, std::size_t dims,
                                const std::vector<std::vector<std::vector<Degree>>>& cells,
                                const std::vector<std::uint64_t>& masks) {
    DegreeTable t;
    t.num_objects_ = num_objects;
    t.num_users_ = num_users;
    t.dims_ = dims;
    t.cells_.resize(num_objects * num_users * dims);
    t.norms_.resize(num_objects * num_users);
    if (masks.empty()) {
        t.specified_.resize(num_users, dims == 64 ? ~0ull : (1ull << dims) - 1);
    } else {
        t.specified_ = masks;
    }
    for (std::size_t i = 0; i < num_objects; ++i) {
        for (std::size_t j = 0; j < num_users; ++j) {
            double norm = 0.0;
            for (std::size_t k = 0; k < dims; ++k) {
                Degree d = cells.at(i).at(j).at(k);
                // Indifferent coordinates hold the defined constant 1.
                if (!(t.specified_[j] & (1ull << k))) d = Degree::one();
                t.cells_[(i * num_users + j) * dims + k] = d;
                norm += d.value();
            }
            t.norms_[i * num_users + j] = norm;
        }
    }
    return t;
}

double DegreeTable::norm_sum(std::size_t object) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < num_users_; ++j) sum += norms_[object * num_users_ + j];
    return sum;
}

void DegreeTable::refresh_norms() {
    for (std::size_t i = 0; i < num_objects_; ++i) {
        for (std::size_t j = 0; j < num_users_; ++j) {
            double norm = 0.0;
            const Degree* cell = cells_.data() + (i * num_users_ + j) * dims_;
            for (std::size_t k = 0; k < dims_; ++k) norm += cell[k].value();
            norms_[i * num_users_ + j] = norm;
        }
    }
}

}  // namespace gcp
