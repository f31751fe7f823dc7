#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "apfree/int_set.hpp"

namespace apfree {

// A finite integer sequence a_1,...,a_k (values may repeat).
using Seq = std::vector<value_t>;

// A k-term D-progression is a nonconstant sequence whose (D+1)-st finite
// differences vanish; equivalently the values of a nonconstant polynomial
// of degree at most D at 1..k. The type of such a sequence is the triple
// (minimal degree, first value, degree!*lead coefficient); distinct
// progressions can share a type.
struct ProgressionType {
    int degree = 0;
    value_t first = 0;
    value_t difference = 0;

    auto operator<=>(const ProgressionType&) const = default;
};

struct Certificate {
    bool free = true;
    std::optional<Seq> witness;  // present iff !free; a progression in the set
};

// First finite difference (a_{v+1} - a_v). Length must be >= 2.
Seq forward_difference(const Seq& s);

// m-fold forward difference, 1 <= m < length.
Seq repeated_difference(Seq s, int m);

// True iff s is nonconstant and its (degree_bound+1)-st differences are
// all zero. Length must be at least degree_bound + 2.
bool is_progression(const Seq& s, int degree_bound);

// Minimal-degree type of a nonconstant sequence. Throws if the sequence is
// constant or no degree below length-1 fits.
ProgressionType type_of(const Seq& s);

// Unique length-k sequence agreeing with the given (degree_bound+1)-entry
// prefix and satisfying the vanishing-difference recurrence. Integer
// prefixes always extend to integers (the recurrence solves for the next
// entry with unit coefficient).
Seq extend_progression(const Seq& prefix, int degree_bound, int k);

// Visits every nonconstant length-k sequence with all values in `set`
// satisfying the degree-bound recurrence, in lexicographic order of the
// leading (degree_bound+1)-tuple. Prefix tuples are drawn with repetition:
// progressions such as 5,2,1,2,5 revisit values. The visitor returns false
// to stop early. No duplicates are produced (the prefix determines the
// sequence).
void for_each_progression(const IntSet& set, int k, int degree_bound,
                          const std::function<bool(const Seq&)>& visit);

std::vector<Seq> enumerate_progressions(const IntSet& set, int k, int degree_bound);

// Number of distinct types among the k-term D-progressions in `set`.
std::size_t count_types(const IntSet& set, int k, int degree_bound);

// First elements of all k-term D-progressions in `set`. Removing the
// starters from the set leaves it progression-free.
IntSet find_starters(const IntSet& set, int k, int degree_bound);

// Free iff the set has no k-term D-progression; otherwise carries the
// first progression in enumeration order as witness.
Certificate verify_free(const IntSet& set, int k, int degree_bound);

}  // namespace apfree
