#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apfree/int_set.hpp"
#include "apfree/progression.hpp"
#include "apfree/torus.hpp"

namespace apfree {

// Smallest n with k <= 2^n D; the result satisfies k > 2^{n-1} D.
// Requires k > 2D.
int derive_n(int k, int degree_bound);

// floor(2^{n/2} (log2(psi)/D)^{1/(n+1)}), clamped below by d_min.
int derive_d(double psi, int degree_bound, int n, int d_min);

// Shell half-width making 1 - (type/N) vol B(sqrt(F sigma delta)) equal
// d/(d+2); evaluated in log space.
double derive_delta(int dim, int degree_bound, double type_count, double n_elements);

// Largest n0 with 2 delta n0 <= 2^{-2D}, at least 1.
std::int64_t derive_n0(double delta, int degree_bound);

struct ConstructionOverrides {
    std::optional<double> psi;
    std::optional<int> dim;
    std::optional<double> delta;
    std::optional<std::int64_t> n0;
    std::optional<std::int64_t> type_count;
    int d_min = 8;
    int z_candidates = 65;
    std::int64_t mc_samples = 200000;
};

// Fully resolved parameter set, recorded with every run.
struct ConstructionParams {
    int k = 0;
    int degree_bound = 0;
    int n = 0;
    int dim = 0;
    double delta = 0.0;
    std::int64_t n0 = 1;
    double psi = 2.0;
    std::int64_t type_count = 0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::int64_t mc_samples = 0;
    int z_candidates = 0;
    int d_min = 0;
};

struct TrialResult {
    int trial_index = 0;
    std::int64_t size_a = 0;
    std::int64_t size_starters = 0;
    std::int64_t size_result = 0;  // size_a - size_starters
};

struct TrialSample {
    IntSet kept;      // A
    IntSet starters;  // T
    // membership decisions that fell within 1e-9 of a shell endpoint
    std::int64_t near_boundary = 0;
};

// One randomized trial: A is the subset of `set` whose torus image
// a*theta + alpha mod 1 lands in the annuli, T its progression starters;
// A \ T is always free. The per-coordinate reduction keeps the error of
// a*theta below 1e-12 even for large |a|.
TrialSample sample_trial(const IntSet& set, const AnnuliSpec& spec, const TorusVector& theta,
                         const TorusVector& alpha, int k, int degree_bound);

struct ExpectedCounts {
    double ea = 0.0;        // N * vol(annuli)
    double et_bound = 0.0;  // type_count * vol(annuli) * vol B(sqrt(F sigma delta))
};

ExpectedCounts expected_counts(const AnnuliSpec& spec, const VolumeEstimate& volume, double type_count,
                               double n_elements);

struct ConstructionResult {
    ConstructionParams params;
    AnnuliSpec annuli;
    VolumeEstimate volume;
    std::vector<TrialResult> trials;
    IntSet best_subset;
    Certificate certificate;
    double predicted_ea = 0.0;
    double predicted_et_bound = 0.0;
    int best_trial_index = 0;
    bool delta_clamped = false;
    // When every trial nets an empty set the result falls back to a
    // singleton, which is trivially free; the flag records that the best
    // subset did not come from a trial.
    bool singleton_fallback = false;
    std::int64_t near_boundary_events = 0;

    double mean_size_a() const;
    double mean_size_starters() const;
    double stderr_size_a() const;
    double stderr_size_starters() const;
};

// The end-to-end randomized construction: derive parameters, build the
// base set and annuli, pick z, run independent seeded trials, and return
// the best verified progression-free subset. Deterministic for a fixed
// master seed.
ConstructionResult run_construction(const IntSet& set, int k, int degree_bound,
                                    const ConstructionOverrides& overrides, int trials,
                                    std::uint64_t master_seed);

}  // namespace apfree
