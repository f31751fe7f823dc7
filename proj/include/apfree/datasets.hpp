#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "apfree/int_set.hpp"

namespace apfree {

// {1, ..., n}
IntSet interval_set(std::int64_t n);

// {1, 4, 9, ..., n^2}
IntSet squares_set(std::int64_t n);

// Random subset of [n]; each element kept independently with probability
// c * n^{-1/(k-1)}.
struct RandomSetModel {
    std::int64_t n = 1;
    double c = 1.0;
    int k = 3;
    std::uint64_t seed = 0;

    double inclusion_probability() const;
};

IntSet random_bernoulli_set(const RandomSetModel& model);

struct ApCountEstimate {
    double expected = 0.0;     // C(n,2) p^{k-2} with p = c n^{-1/(k-1)}
    double upper_bound = 0.0;  // (c^{k-2}/2) n^{k/(k-1)}
};

ApCountEstimate expected_ap_count(std::int64_t n, double c, int k);

// Indices (a, b, c) with a < b < c <= n and a^2 + c^2 = 2 b^2: the 3-term
// arithmetic progressions among the squares.
struct SquareTriple {
    value_t a = 0;
    value_t b = 0;
    value_t c = 0;

    auto operator<=>(const SquareTriple&) const = default;
};

std::vector<SquareTriple> squares_3ap_bruteforce(std::int64_t n);

struct ParameterizedTriples {
    std::vector<SquareTriple> triples;  // normalized a < c, deduplicated, sorted
    std::int64_t stu_count = 0;         // admissible (s,t,u) with gcd(s,t)=1 and u(s^2+t^2) <= n
};

// Enumerates the classical parameterization a = u(2st - s^2 + t^2),
// b = u(s^2 + t^2), c = u(2st + s^2 - t^2) over coprime (s, t). Members
// are normalized by absolute value: the parameterization reaches some
// progressions only with one endpoint negated, and only the square
// matters.
ParameterizedTriples squares_3ap_parameterized(std::int64_t n);

// One integer per line; '#' lines and blank lines are skipped; duplicates
// and non-integers are rejected with the offending line number.
IntSet load_set(const std::filesystem::path& path);
void save_set(const IntSet& set, const std::filesystem::path& path);

}  // namespace apfree
