#pragma once

#include "apfree/int_set.hpp"

namespace apfree {

// Closed-form evaluators for the density lower bounds used in reports.
// All exponentials and logarithms are base 2 and evaluation happens in
// log2 space; unspecified leading constants are caller-supplied and
// default to 1.

enum class KsszVariant { standard, refined };

// Transfer constant applied to a known interval value: 2^{-15} (standard)
// or 1/34 (refined).
double bound_kssz(double r_k_interval_value, KsszVariant variant);

// log2 of the interval density bound for progression-free subsets of [N].
double bound_interval_log2(int k, int degree_bound, double log2_n, double constant);
double bound_interval(int k, int degree_bound, double n, double constant);  // requires n >= 4

// Same exponent driven by log2(psi) instead of log2(N); requires psi >= 2.
double bound_main_log2(int k, int degree_bound, double log2_psi, double constant);
double bound_main(int k, int degree_bound, double psi, double constant);

// Cardinality bound for AP3-free subsets of the first N squares; the
// log2 form takes log2(N) so astronomically large N stays representable.
double bound_squares_log2(double log2_n, double constant);
double bound_squares(double n, double constant);  // requires n >= 5

struct TypeUpperBound {
    double n_power = 0.0;  // N^{D+1}, unconditional
    double n_diam = 0.0;   // N * diameter, implied constant reported as 1
    double min_value = 0.0;
};

TypeUpperBound type_upper_bound(const IntSet& set, int k, int degree_bound);

}  // namespace apfree
