#include "apfree/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "apfree/bounds.hpp"
#include "apfree/datasets.hpp"
#include "apfree/rng.hpp"

namespace apfree {

std::vector<SquaresExperimentRow> squares_experiment(const std::vector<std::int64_t>& sizes, int trials,
                                                     std::uint64_t master_seed,
                                                     const ConstructionOverrides& base_overrides) {
    if (sizes.empty()) throw std::domain_error("squares_experiment: empty size range");
    std::vector<SquaresExperimentRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t n = sizes[i];
        const IntSet set = squares_set(n);
        ConstructionOverrides overrides = base_overrides;
        overrides.psi = 2.0 * std::numbers::pi * std::log2(static_cast<double>(n));
        const ConstructionResult result =
            run_construction(set, 3, 1, overrides, trials, derive_seed(master_seed, 0x5100 + i));
        SquaresExperimentRow row;
        row.n = n;
        row.type_count = result.params.type_count;
        row.best_size = static_cast<std::int64_t>(result.best_subset.size());
        row.density = static_cast<double>(row.best_size) / static_cast<double>(set.size());
        row.bound = n >= 5 ? bound_squares(static_cast<double>(n), 1.0) / static_cast<double>(n) : 0.0;
        row.verified = result.certificate.free;
        rows.push_back(row);
    }
    return rows;
}

std::vector<RandomExperimentRow> random_experiment(const std::vector<std::int64_t>& ns, int k, double c, int seeds,
                                                   int trials, std::uint64_t master_seed,
                                                   const ConstructionOverrides& base_overrides) {
    if (ns.empty()) throw std::domain_error("random_experiment: empty range of n");
    if (seeds < 1) throw std::domain_error("random_experiment: needs at least one seed");
    std::vector<RandomExperimentRow> rows;
    rows.reserve(ns.size() * static_cast<std::size_t>(seeds));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        for (int s = 0; s < seeds; ++s) {
            const std::uint64_t set_seed =
                derive_seed(master_seed, 0xa100 + (static_cast<std::uint64_t>(i) << 16) + static_cast<std::uint64_t>(s));
            RandomSetModel model{ns[i], c, k, set_seed};
            const IntSet set = random_bernoulli_set(model);
            RandomExperimentRow row;
            row.n = ns[i];
            row.set_size = static_cast<std::int64_t>(set.size());
            row.set_seed = set_seed;
            if (set.empty()) {
                // A vanishing draw (possible only at tiny n) yields an empty
                // row rather than a construction error.
                rows.push_back(row);
                continue;
            }
            const ConstructionResult result =
                run_construction(set, k, 1, base_overrides, trials, derive_seed(set_seed, 0xc0));
            row.best_size = static_cast<std::int64_t>(result.best_subset.size());
            row.density = static_cast<double>(row.best_size) / static_cast<double>(set.size());
            row.verified = result.certificate.free;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace apfree
