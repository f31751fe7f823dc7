#pragma once

#include "apfree/int_set.hpp"

namespace apfree {

inline constexpr std::int64_t kExactSearchCap = 30;

enum class BaseStrategy { exact, greedy, behrend, auto_select };

struct BaseSetRequest {
    std::int64_t n0 = 1;
    int k = 3;
    int degree_bound = 1;  // the construction passes 2D here
    BaseStrategy strategy = BaseStrategy::auto_select;
    std::int64_t exact_cap = kExactSearchCap;
};

// Maximum-cardinality subset of [n0] with no k-term progressions of the
// given degree bound, found by branch and bound over inclusion decisions.
// Ties break to the lexicographically smallest optimal set. Refuses
// n0 beyond the exact cap.
IntSet exact_max_free(std::int64_t n0, int k, int degree_bound, std::int64_t cap = kExactSearchCap);

// Scan 1..n0 in order, keeping each element that leaves the set free.
IntSet greedy_free(std::int64_t n0, int k, int degree_bound);

// Digit construction for 3-term AP-free subsets of [n]: numbers whose
// base-(2m) digits stay below m and whose digit vectors share a squared
// norm. Scans m and the norm shell, returning the largest set found.
IntSet behrend_digits(std::int64_t n);

IntSet build_base_set(const BaseSetRequest& request);

// The base set feeding the annuli radii: {1} when k <= 4D, otherwise a
// k-term 2D-progression-free subset of [n0] (exact below the cap, greedy
// above). Requires k > 2D.
IntSet base_set(std::int64_t n0, int k, int progression_degree, std::int64_t cap = kExactSearchCap);

}  // namespace apfree
