#include "apfree/torus.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "apfree/rng.hpp"

namespace apfree {

namespace {

constexpr std::int64_t kChunkSize = 1 << 15;

double box_half_width(int degree_bound) { return std::ldexp(1.0, -degree_bound - 1); }

// Runs fn(chunk_index, chunk_samples) over a fixed chunk decomposition of
// the sample budget on a small thread pool. Chunk outputs are indexed, so
// merged results are independent of scheduling.
template <class Fn>
void run_chunks(std::int64_t samples, Fn&& fn) {
    const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));
    if (workers <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c)
            fn(c, std::min(kChunkSize, samples - c * kChunkSize));
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                fn(c, std::min(kChunkSize, samples - c * kChunkSize));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

double reduce_mod1(double x) { return x - std::floor(x + 0.5); }

TorusVector mod1(std::span<const double> x) {
    TorusVector out;
    out.coords.reserve(x.size());
    for (double v : x) out.coords.push_back(reduce_mod1(v));
    return out;
}

bool in_box(const TorusVector& x, int degree_bound) {
    const double h = box_half_width(degree_bound);
    for (double c : x.coords)
        if (!(std::abs(c) < h)) return false;
    return true;
}

Moments moments(int dim, int degree_bound) {
    if (dim < 1) throw std::domain_error("moments: dimension must be positive");
    if (degree_bound < 1) throw std::domain_error("moments: degree bound must be positive");
    const double scale = std::ldexp(1.0, -2 * degree_bound);
    return Moments{scale * dim / 12.0, scale * std::sqrt(dim / 180.0)};
}

double ball_volume(int dim, double radius) {
    if (dim < 1) throw std::domain_error("ball_volume: dimension must be positive");
    if (radius < 0) throw std::domain_error("ball_volume: radius must be nonnegative");
    if (radius == 0.0) return 0.0;
    const double log_vol =
        0.5 * dim * std::log(std::numbers::pi) + dim * std::log(radius) - std::lgamma(0.5 * dim + 1.0);
    return std::exp(log_vol);
}

double f_constant(int degree_bound) {
    if (degree_bound < 1) throw std::domain_error("f_constant: degree bound must be positive");
    double best = 0.0;
    double fact = 1.0;       // D'!
    double fact2 = 1.0;      // (2D')!
    for (int dp = 1; dp <= degree_bound; ++dp) {
        fact *= dp;
        fact2 *= (2 * dp - 1) * (2 * dp);
        const double num = fact * std::ldexp(1.0, dp);
        best = std::max(best, num * num / fact2);
    }
    return best;
}

AnnuliSpec::AnnuliSpec(int dim, int degree_bound, IntSet base, std::int64_t n0, double delta, double z)
    : dim_(dim), degree_bound_(degree_bound), base_(std::move(base)), n0_(n0), delta_(delta), z_(z) {
    if (dim_ < 1) throw std::domain_error("AnnuliSpec: dimension must be positive");
    if (degree_bound_ < 1) throw std::domain_error("AnnuliSpec: degree bound must be positive");
    if (n0_ < 1) throw std::domain_error("AnnuliSpec: n0 must be positive");
    if (delta_ < 0) throw std::domain_error("AnnuliSpec: delta must be nonnegative");
    if (!(z_ >= -1.0 && z_ <= 1.0)) throw std::domain_error("AnnuliSpec: normalized z must lie in [-1, 1]");
    if (!base_.empty() && (base_.min() < 1 || base_.max() > n0_))
        throw std::domain_error("AnnuliSpec: base set must be contained in [1, n0]");
    // Shell half-width times count must fit in the box scale; this also
    // makes the shells pairwise disjoint (delta <= 1/(2 n0)).
    const double budget = std::ldexp(1.0, -2 * degree_bound_);
    if (2.0 * delta_ * static_cast<double>(n0_) > budget * (1.0 + 1e-12))
        throw std::domain_error("AnnuliSpec: constraint 2*delta*n0 <= 2^{-2D} violated");
    const Moments m = moments(dim_, degree_bound_);
    mu_ = m.mu;
    sigma_ = m.sigma;
    base_flags_.assign(static_cast<std::size_t>(n0_), 0);
    for (value_t a : base_) base_flags_[static_cast<std::size_t>(a - 1)] = 1;
}

bool AnnuliSpec::contains_normalized(double t) const {
    if (delta_ <= 0.0) return false;
    const double u = z_ - t;  // want u within delta of (a-1)/n0
    const double scaled = u * static_cast<double>(n0_);
    const std::int64_t nearest = std::llround(scaled);
    for (std::int64_t j = nearest - 1; j <= nearest + 1; ++j) {
        if (j < 0 || j >= n0_) continue;
        if (!base_flags_[static_cast<std::size_t>(j)]) continue;
        if (std::abs(u - static_cast<double>(j) / static_cast<double>(n0_)) < delta_) return true;
    }
    return false;
}

double AnnuliSpec::boundary_distance(double t) const {
    const double u = z_ - t;
    const double scaled = u * static_cast<double>(n0_);
    const std::int64_t nearest = std::llround(scaled);
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t j = nearest - 1; j <= nearest + 1; ++j) {
        if (j < 0 || j >= n0_) continue;
        if (!base_flags_[static_cast<std::size_t>(j)]) continue;
        const double dist = std::abs(std::abs(u - static_cast<double>(j) / static_cast<double>(n0_)) - delta_);
        best = std::min(best, dist);
    }
    return best;
}

bool AnnuliSpec::contains(const TorusVector& x) const {
    if (x.dim() != dim_) throw std::domain_error("AnnuliSpec::contains: dimension mismatch");
    if (!in_box(x, degree_bound_)) return false;
    double norm2 = 0.0;
    for (double c : x.coords) norm2 += c * c;
    return contains_normalized((norm2 - mu_) / sigma_);
}

VolumeEstimate estimate_volume(const AnnuliSpec& spec, std::int64_t samples, std::uint64_t seed) {
    if (samples < 1000) throw std::domain_error("estimate_volume: needs at least 1000 samples");
    const double h = box_half_width(spec.degree_bound());
    const int d = spec.dim();
    const double mu = spec.mu(), sigma = spec.sigma();

    const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
    run_chunks(samples, [&](std::int64_t chunk, std::int64_t count) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        std::int64_t h_local = 0;
        for (std::int64_t s = 0; s < count; ++s) {
            double norm2 = 0.0;
            bool inside = true;
            for (int i = 0; i < d; ++i) {
                const double c = rng.uniform_symmetric(h);
                if (!(std::abs(c) < h)) inside = false;  // closed edge has measure zero but keep semantics exact
                norm2 += c * c;
            }
            if (inside && spec.contains_normalized((norm2 - mu) / sigma)) ++h_local;
        }
        hits[static_cast<std::size_t>(chunk)] = h_local;
    });

    std::int64_t total = 0;
    for (std::int64_t c : hits) total += c;
    const double p = static_cast<double>(total) / static_cast<double>(samples);
    VolumeEstimate est;
    est.relative = p;
    est.absolute = std::ldexp(p, -spec.dim() * spec.degree_bound());
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    return est;
}

double choose_z(int dim, int degree_bound, const IntSet& base, std::int64_t n0, double delta, int candidates,
                std::int64_t samples, std::uint64_t seed) {
    if (candidates < 1) throw std::domain_error("choose_z: needs at least one candidate");
    std::vector<double> grid(static_cast<std::size_t>(candidates));
    if (candidates == 1) {
        grid[0] = 0.0;
    } else {
        for (int j = 0; j < candidates; ++j)
            grid[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / (candidates - 1);
    }

    // All candidates score the same sample stream: the normalized norm t
    // does not depend on z, so per-candidate hit counts are exactly what
    // estimate_volume would report for that z with this seed.
    std::vector<AnnuliSpec> specs;
    specs.reserve(grid.size());
    for (double z : grid) specs.emplace_back(dim, degree_bound, base, n0, delta, z);

    const double h = box_half_width(degree_bound);
    const Moments m = moments(dim, degree_bound);
    const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(chunks),
                                                  std::vector<std::int64_t>(grid.size(), 0));
    run_chunks(samples, [&](std::int64_t chunk, std::int64_t count) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        auto& local = counts[static_cast<std::size_t>(chunk)];
        for (std::int64_t s = 0; s < count; ++s) {
            double norm2 = 0.0;
            bool inside = true;
            for (int i = 0; i < dim; ++i) {
                const double c = rng.uniform_symmetric(h);
                if (!(std::abs(c) < h)) inside = false;
                norm2 += c * c;
            }
            if (!inside) continue;
            const double t = (norm2 - m.mu) / m.sigma;
            for (std::size_t j = 0; j < grid.size(); ++j)
                if (specs[j].contains_normalized(t)) ++local[j];
        }
    });

    std::vector<std::int64_t> totals(grid.size(), 0);
    for (const auto& local : counts)
        for (std::size_t j = 0; j < grid.size(); ++j) totals[j] += local[j];

    std::size_t best = 0;
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (totals[j] > totals[best]) best = j;  // ties keep the smallest z
    return grid[best];
}

}  // namespace apfree
