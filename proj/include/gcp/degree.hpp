// Exact rational matching degrees and set-similarity functions.
//
// Degrees are ratios of integer leaf-set cardinalities.  Keeping the
// numerator/denominator pair makes dominance comparisons exact; the
// double value is only used for norms, sort keys and reports.

#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "gcp/intervals.hpp"

namespace gcp {

// Canonical non-negative rational in [0, 1] (den > 0, gcd-reduced).
struct Degree {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Degree() = default;
    Degree(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (num == 0) {
            den = 1;
        } else {
            std::int64_t g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
    }

    static Degree zero() { return Degree{}; }
    static Degree one() {
        Degree d;
        d.num = 1;
        return d;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Exact cross-multiplied comparisons; cardinalities are small enough
    // that the products stay well inside int64.
    friend bool operator==(const Degree& a, const Degree& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator<(const Degree& a, const Degree& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Degree& a, const Degree& b) { return !(b < a); }
    friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
    friend bool operator>=(const Degree& a, const Degree& b) { return !(a < b); }
};

enum class Similarity { kJaccard, kOverlap, kDice, kCustom };

// A similarity function maps the cardinalities (|x|, |y|, |x∩y|, |x∪y|)
// to a degree in [0, 1].  Custom functions must be non-decreasing in the
// intersection and non-increasing in |x|, |y| and the union for the
// index bounds to stay sound.
struct SimilarityFunction {
    Similarity kind = Similarity::kJaccard;
    std::function<Degree(const SetCards&)> custom;

    static SimilarityFunction jaccard() { return {Similarity::kJaccard, nullptr}; }
    static SimilarityFunction overlap() { return {Similarity::kOverlap, nullptr}; }
    static SimilarityFunction dice() { return {Similarity::kDice, nullptr}; }

    Degree apply(const SetCards& c) const {
        switch (kind) {
            case Similarity::kJaccard:
                return c.uni == 0 ? Degree::zero() : Degree(c.inter, c.uni);
            case Similarity::kOverlap: {
                std::int64_t m = std::min(c.x_size, c.y_size);
                return m == 0 ? Degree::zero() : Degree(c.inter, m);
            }
            case Similarity::kDice: {
                std::int64_t s = c.x_size + c.y_size;
                return s == 0 ? Degree::zero() : Degree(2 * c.inter, s);
            }
            case Similarity::kCustom:
                return custom(c);
        }
        return Degree::zero();
    }
};

SimilarityFunction similarity_from_name(const std::string& name);
std::string similarity_name(const SimilarityFunction& f);

}  // namespace gcp
