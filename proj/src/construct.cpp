#include "apfree/construct.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "apfree/base_sets.hpp"
#include "apfree/rng.hpp"

namespace apfree {

namespace {

// Seed-stream roles under one master seed.
constexpr std::uint64_t kStreamChooseZ = 1;
constexpr std::uint64_t kStreamVolume = 2;
constexpr std::uint64_t kStreamTrialBase = 16;

// frac(a*theta + alpha) reduced into [-1/2, 1/2). The product a*theta is
// split with an FMA so the residual survives the reduction; naive products
// lose ~|a| ulps, which matters once |a| reaches the square of the
// ambient bound.
double reduced_affine(double a, double theta, double alpha) {
    const double hi = a * theta;
    const double lo = std::fma(a, theta, -hi);
    const double frac_hi = hi - std::floor(hi);
    const double x = frac_hi + lo + alpha;
    return x - std::floor(x + 0.5);
}

double mean(const std::vector<TrialResult>& trials, std::int64_t TrialResult::* field) {
    if (trials.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& t : trials) sum += static_cast<double>(t.*field);
    return sum / static_cast<double>(trials.size());
}

double stderr_of_mean(const std::vector<TrialResult>& trials, std::int64_t TrialResult::* field) {
    const std::size_t n = trials.size();
    if (n < 2) return 0.0;
    const double m = mean(trials, field);
    double ss = 0.0;
    for (const auto& t : trials) {
        const double d = static_cast<double>(t.*field) - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

int derive_n(int k, int degree_bound) {
    if (degree_bound < 1) throw std::domain_error("derive_n: degree bound must be positive");
    if (k <= 2 * degree_bound) throw std::domain_error("derive_n: requires k > 2D");
    int n = 1;
    while ((static_cast<std::int64_t>(degree_bound) << n) < k) ++n;
    return n;  // minimal n with 2^n D >= k, hence k > 2^{n-1} D
}

int derive_d(double psi, int degree_bound, int n, int d_min) {
    if (psi < 2.0) throw std::domain_error("derive_d: psi must be at least 2");
    const double x = std::exp2(0.5 * n) * std::pow(std::log2(psi) / degree_bound, 1.0 / (n + 1));
    // Nudge before flooring: exact integer values of the formula (which
    // the small-parameter regime does hit) must not round down.
    const int raw = static_cast<int>(std::floor(x + 1e-9));
    return std::max({1, d_min, raw});
}

double derive_delta(int dim, int degree_bound, double type_count, double n_elements) {
    if (dim < 1) throw std::domain_error("derive_delta: dimension must be positive");
    if (type_count < 1.0) throw std::domain_error("derive_delta: type count must be at least 1");
    if (n_elements < 1.0) throw std::domain_error("derive_delta: set size must be at least 1");
    const double f = f_constant(degree_bound);
    const double sigma = moments(dim, degree_bound).sigma;
    const double ratio = type_count / n_elements;
    const double log_delta = (2.0 / dim) * (std::lgamma(0.5 * dim) + std::log(static_cast<double>(dim) / (dim + 2)) -
                                            std::log(ratio)) -
                             std::log(std::numbers::pi * f * sigma);
    return std::exp(log_delta);
}

std::int64_t derive_n0(double delta, int degree_bound) {
    if (!(delta > 0.0)) throw std::domain_error("derive_n0: delta must be positive");
    const double budget = std::ldexp(1.0, -2 * degree_bound);
    const double raw = std::floor(budget / (2.0 * delta));
    if (raw < 1.0) return 1;
    return static_cast<std::int64_t>(raw);
}

TrialSample sample_trial(const IntSet& set, const AnnuliSpec& spec, const TorusVector& theta,
                         const TorusVector& alpha, int k, int degree_bound) {
    if (theta.dim() != spec.dim() || alpha.dim() != spec.dim())
        throw std::domain_error("sample_trial: theta/alpha dimension mismatch");
    const int d = spec.dim();
    const double h = std::ldexp(1.0, -spec.degree_bound() - 1);
    std::vector<value_t> kept;
    std::int64_t near = 0;
    for (value_t a : set) {
        const double af = static_cast<double>(a);
        double norm2 = 0.0;
        bool inside = true;
        for (int i = 0; i < d; ++i) {
            const double y = reduced_affine(af, theta.coords[static_cast<std::size_t>(i)],
                                            alpha.coords[static_cast<std::size_t>(i)]);
            if (!(std::abs(y) < h)) {
                inside = false;
                break;
            }
            norm2 += y * y;
        }
        if (!inside) continue;
        const double t = (norm2 - spec.mu()) / spec.sigma();
        if (spec.contains_normalized(t)) kept.push_back(a);
        if (spec.boundary_distance(t) < 1e-9) ++near;
    }
    TrialSample out{IntSet::from_sorted(std::move(kept)), IntSet{}, near};
    out.starters = find_starters(out.kept, k, degree_bound);
    return out;
}

ExpectedCounts expected_counts(const AnnuliSpec& spec, const VolumeEstimate& volume, double type_count,
                               double n_elements) {
    ExpectedCounts out;
    out.ea = n_elements * volume.absolute;
    const double radius = std::sqrt(f_constant(spec.degree_bound()) * spec.sigma() * spec.delta());
    out.et_bound = type_count * volume.absolute * ball_volume(spec.dim(), radius);
    return out;
}

ConstructionResult run_construction(const IntSet& set, int k, int degree_bound,
                                    const ConstructionOverrides& overrides, int trials,
                                    std::uint64_t master_seed) {
    if (degree_bound < 1) throw std::domain_error("run_construction: degree bound must be positive");
    if (k <= 2 * degree_bound) throw std::domain_error("run_construction: requires k > 2D");
    if (set.empty()) throw std::domain_error("run_construction: input set is empty");
    if (trials < 1) throw std::domain_error("run_construction: needs at least one trial");

    const double n_elements = static_cast<double>(set.size());

    ConstructionParams params;
    params.k = k;
    params.degree_bound = degree_bound;
    params.trials = trials;
    params.master_seed = master_seed;
    params.mc_samples = overrides.mc_samples;
    params.z_candidates = overrides.z_candidates;
    params.d_min = overrides.d_min;

    params.type_count = overrides.type_count ? *overrides.type_count
                                             : static_cast<std::int64_t>(count_types(set, k, degree_bound));
    params.psi = overrides.psi ? std::max(2.0, *overrides.psi)
                               : std::max(2.0, static_cast<double>(params.type_count) / n_elements);
    params.n = derive_n(k, degree_bound);
    params.dim = overrides.dim ? *overrides.dim : derive_d(params.psi, degree_bound, params.n, overrides.d_min);
    if (params.dim < 1) throw std::domain_error("run_construction: dimension override must be positive");

    // The optimized delta grows past the annuli budget at desk scales
    // (it only turns small once log Psi dwarfs d); clamp so a valid spec
    // with n0 >= 1 always exists. A zero type count sends the formula to
    // infinity, which the clamp absorbs as well.
    const double delta_cap = std::ldexp(1.0, -2 * degree_bound - 1);
    bool clamped = false;
    if (overrides.delta) {
        params.delta = *overrides.delta;
    } else if (params.type_count < 1) {
        params.delta = delta_cap;
        clamped = true;
    } else {
        const double raw = derive_delta(params.dim, degree_bound, static_cast<double>(params.type_count), n_elements);
        clamped = raw > delta_cap;
        params.delta = clamped ? delta_cap : raw;
    }
    if (!(params.delta > 0.0)) throw std::domain_error("run_construction: delta must be positive");

    params.n0 = overrides.n0 ? *overrides.n0 : derive_n0(params.delta, degree_bound);

    const IntSet base = base_set(params.n0, k, degree_bound);

    const double z = choose_z(params.dim, degree_bound, base, params.n0, params.delta, params.z_candidates,
                              params.mc_samples, derive_seed(master_seed, kStreamChooseZ));
    AnnuliSpec spec(params.dim, degree_bound, base, params.n0, params.delta, z);
    const VolumeEstimate volume =
        estimate_volume(spec, params.mc_samples, derive_seed(master_seed, kStreamVolume));

    std::vector<TrialResult> trial_stats(static_cast<std::size_t>(trials));
    std::vector<IntSet> trial_sets(static_cast<std::size_t>(trials));
    std::vector<std::int64_t> boundary_counts(static_cast<std::size_t>(trials), 0);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= trials) return;
            Rng rng(derive_seed(master_seed, kStreamTrialBase + static_cast<std::uint64_t>(i)));
            TorusVector theta, alpha;
            theta.coords.resize(static_cast<std::size_t>(params.dim));
            alpha.coords.resize(static_cast<std::size_t>(params.dim));
            for (auto& c : theta.coords) c = rng.uniform_box0();
            for (auto& c : alpha.coords) c = rng.uniform_box0();
            TrialSample sample = sample_trial(set, spec, theta, alpha, k, degree_bound);
            boundary_counts[static_cast<std::size_t>(i)] = sample.near_boundary;

            IntSet result = sample.kept.set_minus(sample.starters);
            trial_stats[static_cast<std::size_t>(i)] =
                TrialResult{i, static_cast<std::int64_t>(sample.kept.size()),
                            static_cast<std::int64_t>(sample.starters.size()),
                            static_cast<std::int64_t>(result.size())};
            trial_sets[static_cast<std::size_t>(i)] = std::move(result);
        }
    };
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, trials));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int best_index = 0;
    for (int i = 1; i < trials; ++i)
        if (trial_stats[static_cast<std::size_t>(i)].size_result >
            trial_stats[static_cast<std::size_t>(best_index)].size_result)
            best_index = i;

    IntSet best = trial_sets[static_cast<std::size_t>(best_index)];
    bool fallback = false;
    if (best.empty()) {
        best = IntSet{set.min()};
        fallback = true;
    }

    Certificate certificate = verify_free(best, k, degree_bound);
    if (!certificate.free)
        throw std::logic_error("run_construction: starter removal failed to produce a free set");

    const ExpectedCounts predicted =
        expected_counts(spec, volume, static_cast<double>(params.type_count), n_elements);

    std::int64_t near_total = 0;
    for (std::int64_t c : boundary_counts) near_total += c;

    return ConstructionResult{params,
                              std::move(spec),
                              volume,
                              std::move(trial_stats),
                              std::move(best),
                              std::move(certificate),
                              predicted.ea,
                              predicted.et_bound,
                              best_index,
                              clamped,
                              fallback,
                              near_total};
}

double ConstructionResult::mean_size_a() const { return mean(trials, &TrialResult::size_a); }
double ConstructionResult::mean_size_starters() const { return mean(trials, &TrialResult::size_starters); }
double ConstructionResult::stderr_size_a() const { return stderr_of_mean(trials, &TrialResult::size_a); }
double ConstructionResult::stderr_size_starters() const { return stderr_of_mean(trials, &TrialResult::size_starters); }

}  // namespace apfree
