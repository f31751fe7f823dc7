#pragma once

#include <cstdint>
#include <vector>

#include "apfree/construct.hpp"

namespace apfree {

// Density experiment over the first-N-squares sets: each run overrides
// psi with 2*pi*log2(N), the type-count budget the squares provably
// satisfy.
struct SquaresExperimentRow {
    std::int64_t n = 0;
    std::int64_t type_count = 0;
    std::int64_t best_size = 0;
    double density = 0.0;
    double bound = 0.0;  // squares cardinality bound divided by N, C = 1
    bool verified = false;
};

std::vector<SquaresExperimentRow> squares_experiment(const std::vector<std::int64_t>& sizes, int trials,
                                                     std::uint64_t master_seed,
                                                     const ConstructionOverrides& base_overrides);

// Density experiment over Bernoulli random sets with inclusion probability
// c n^{-1/(k-1)}: the regime where progression types per element stay
// bounded, so the achieved relative density should not decay with n.
struct RandomExperimentRow {
    std::int64_t n = 0;
    std::int64_t set_size = 0;
    std::int64_t best_size = 0;
    double density = 0.0;
    bool verified = false;
    std::uint64_t set_seed = 0;
};

std::vector<RandomExperimentRow> random_experiment(const std::vector<std::int64_t>& ns, int k, double c, int seeds,
                                                   int trials, std::uint64_t master_seed,
                                                   const ConstructionOverrides& base_overrides);

}  // namespace apfree
