#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apfree/rng.hpp"
#include "apfree/torus.hpp"

using namespace apfree;

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

TEST_CASE("mod1") {
    const TorusVector a = mod1(std::vector<double>{0.7, -0.7});
    CHECK(a.coords[0] == doctest::Approx(-0.3));
    CHECK(a.coords[1] == doctest::Approx(0.3));
    CHECK(mod1(std::vector<double>{0.5}).coords[0] == -0.5);  // half-open convention
    const TorusVector b = mod1(std::vector<double>{3.0, -2.0});
    CHECK(b.coords[0] == 0.0);
    CHECK(b.coords[1] == 0.0);
    for (double x : {-17.3, 0.49999, 123456.75, -0.5}) {
        const double y = reduce_mod1(x);
        CHECK(y >= -0.5);
        CHECK(y < 0.5);
        CHECK(std::abs(std::remainder(x - y, 1.0)) < 1e-9);
    }
}

TEST_CASE("in_box") {
    CHECK(in_box(TorusVector{{0.2, 0.2}}, 1));
    CHECK_FALSE(in_box(TorusVector{{0.25, 0.0}}, 1));  // boundary excluded
    CHECK(in_box(TorusVector{{0.3}}, 0));
    CHECK_FALSE(in_box(TorusVector{{-0.26, 0.1}}, 1));
}

TEST_CASE("moments") {
    const Moments a = moments(12, 1);
    CHECK(a.mu == doctest::Approx(0.25));
    CHECK(a.sigma == doctest::Approx(std::sqrt(12.0 / 180.0) / 4.0));
    CHECK(moments(180, 1).sigma == doctest::Approx(0.25));
    CHECK(moments(12, 2).mu == doctest::Approx(0.0625));
    CHECK_THROWS_AS(moments(0, 1), std::domain_error);
}

TEST_CASE("ball_volume") {
    CHECK(ball_volume(2, 1.0) == doctest::Approx(std::numbers::pi));
    CHECK(ball_volume(3, 1.0) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK(ball_volume(1, 0.5) == doctest::Approx(1.0));
    CHECK(ball_volume(7, 0.0) == 0.0);
    CHECK_THROWS_AS(ball_volume(2, -1.0), std::domain_error);
}

TEST_CASE("f_constant") {
    CHECK(f_constant(1) == doctest::Approx(2.0));
    CHECK(f_constant(2) == doctest::Approx(8.0 / 3.0));
    CHECK(f_constant(3) == doctest::Approx(3.2));
    CHECK_THROWS_AS(f_constant(0), std::domain_error);
}

TEST_CASE("annuli membership") {
    const AnnuliSpec spec(16, 1, IntSet{1}, 1, 0.01, 0.5);

    // A point whose squared norm is exactly mu + z*sigma sits at the
    // interval center.
    const double target = spec.mu() + spec.z() * spec.sigma();
    TorusVector on_shell{std::vector<double>(16, std::sqrt(target / 16.0))};
    CHECK(in_box(on_shell, 1));
    CHECK(spec.contains(on_shell));

    const AnnuliSpec wide(16, 1, IntSet{1}, 1, 0.1, 0.0);
    CHECK_FALSE(wide.contains(TorusVector{std::vector<double>(16, 0.0)}));  // normalized norm ~ -4.47

    TorusVector outside{std::vector<double>(16, 0.0)};
    outside.coords[3] = 0.25;
    CHECK_FALSE(wide.contains(outside));  // fails the box test

    CHECK_THROWS_AS(wide.contains(TorusVector{{0.1, 0.1}}), std::domain_error);
    CHECK_THROWS_AS(AnnuliSpec(8, 1, IntSet{1}, 1, 0.2, 0.0), std::domain_error);   // 2*delta*n0 > 2^{-2}
    CHECK_THROWS_AS(AnnuliSpec(8, 1, IntSet{1, 5}, 4, 0.01, 0.0), std::domain_error);  // base not in [1,n0]
}

TEST_CASE("annuli membership ignores coordinate order and signs") {
    Rng rng(21);
    const AnnuliSpec spec(12, 1, IntSet{1, 2}, 3, 0.04, 0.25);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> coords(12);
        for (auto& c : coords) c = rng.uniform_symmetric(0.25);
        TorusVector x{coords};
        std::vector<double> shuffled = coords;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
        for (auto& c : shuffled)
            if (rng.next_u64() & 1) c = -c;
        CHECK(spec.contains(x) == spec.contains(TorusVector{shuffled}));
    }
}

TEST_CASE("normalized squared norm has mean 0 and variance 1") {
    for (int d : {40, 80}) {
        const Moments m = moments(d, 1);
        Rng rng(22 + static_cast<std::uint64_t>(d));
        const int samples = 200000;
        double sum = 0.0, sum2 = 0.0;
        for (int s = 0; s < samples; ++s) {
            double norm2 = 0.0;
            for (int i = 0; i < d; ++i) {
                const double c = rng.uniform_symmetric(0.25);
                norm2 += c * c;
            }
            const double t = (norm2 - m.mu) / m.sigma;
            sum += t;
            sum2 += t * t;
        }
        const double mean = sum / samples;
        const double var = sum2 / samples - mean * mean;
        CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(samples)) * std::sqrt(var) + 1e-3);
        CHECK(var == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("estimate_volume matches the normal-density oracle at large d") {
    const double delta = 0.05;
    const AnnuliSpec spec(80, 1, IntSet{1}, 1, delta, 0.0);
    const VolumeEstimate est = estimate_volume(spec, 400000, 77);
    const double oracle = 2.0 * delta * normal_pdf(0.0);
    CHECK(std::abs(est.relative - oracle) < 3.0 * est.std_error + 1e-4);
    CHECK(est.relative >= 0.4 * delta);  // the annuli-volume lemma with |A0| = 1
    CHECK(est.absolute == doctest::Approx(std::ldexp(est.relative, -80)));
}

TEST_CASE("estimate_volume is deterministic and additive over disjoint shells") {
    const AnnuliSpec spec(40, 1, IntSet{1, 2}, 4, 0.02, 0.5);
    const VolumeEstimate a = estimate_volume(spec, 120000, 5);
    const VolumeEstimate b = estimate_volume(spec, 120000, 5);
    CHECK(a.relative == b.relative);
    CHECK(a.std_error == b.std_error);

    // Same seed means the same draws, so the union count splits exactly.
    const VolumeEstimate first = estimate_volume(AnnuliSpec(40, 1, IntSet{1}, 4, 0.02, 0.5), 120000, 5);
    const VolumeEstimate second = estimate_volume(AnnuliSpec(40, 1, IntSet{2}, 4, 0.02, 0.5), 120000, 5);
    CHECK(spec.delta() * spec.n0() * 2 <= 0.25);
    CHECK(a.relative == doctest::Approx(first.relative + second.relative).epsilon(1e-12));

    const VolumeEstimate zero = estimate_volume(AnnuliSpec(40, 1, IntSet{1}, 4, 0.0, 0.5), 50000, 5);
    CHECK(zero.relative == 0.0);

    CHECK_THROWS_AS(estimate_volume(spec, 100, 5), std::domain_error);
}

TEST_CASE("choose_z") {
    CHECK(choose_z(12, 1, IntSet{1}, 1, 0.05, 1, 20000, 9) == 0.0);

    // With a single shell the volume peaks where the normalized density
    // peaks, near zero for large d.
    const double z = choose_z(80, 1, IntSet{1}, 1, 0.05, 17, 400000, 10);
    CHECK(std::abs(z) <= 2.0 * (2.0 / 16.0));

    // The chosen z beats the endpoints under the same draws.
    const auto volume_at = [&](double zz) {
        return estimate_volume(AnnuliSpec(80, 1, IntSet{1}, 1, 0.05, zz), 400000, 10).relative;
    };
    CHECK(volume_at(z) >= volume_at(-1.0));
    CHECK(volume_at(z) >= volume_at(1.0));
}

TEST_CASE("shell-confined polynomials have small lead coefficients") {
    // Rejection-sample vector polynomials whose values stay in a shell
    // r +- delta and check the lead-coefficient bound 2^D (2D)!^{-1/2} sqrt(delta).
    Rng rng(23);
    const int dim = 3;
    int accepted = 0;
    for (int degree : {1, 2}) {
        const int k = 2 * degree + 1;
        const double delta = 0.08;
        const double r = 1.0;
        const double fact2 = degree == 1 ? 2.0 : 24.0;  // (2D)!
        const double bound = std::ldexp(1.0, degree) / std::sqrt(fact2) * std::sqrt(delta);
        int local = 0;
        while (local < 500) {
            // Base point near the sphere of radius sqrt(r), with higher
            // coefficients proposed up to the scale the shell can admit.
            std::vector<std::vector<double>> coeff(static_cast<std::size_t>(degree) + 1,
                                                   std::vector<double>(dim));
            double base_norm2 = 0.0;
            for (auto& c : coeff[0]) {
                c = rng.uniform_symmetric(1.0);
                base_norm2 += c * c;
            }
            const double scale = std::sqrt(r / base_norm2);
            for (auto& c : coeff[0]) c *= scale;
            for (int i = 1; i <= degree; ++i)
                for (auto& c : coeff[static_cast<std::size_t>(i)])
                    c = rng.uniform_symmetric(0.2 * delta / std::pow(k, i));
            bool inside = true;
            for (int j = 1; j <= k && inside; ++j) {
                double norm2 = 0.0;
                for (int axis = 0; axis < dim; ++axis) {
                    double v = 0.0;
                    for (int i = degree; i >= 0; --i) v = v * j + coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)];
                    norm2 += v * v;
                }
                inside = norm2 >= r - delta && norm2 <= r + delta;
            }
            if (!inside) continue;
            ++local;
            ++accepted;
            double lead2 = 0.0;
            for (double c : coeff[static_cast<std::size_t>(degree)]) lead2 += c * c;
            CHECK(std::sqrt(lead2) <= bound + 1e-12);
        }
    }
    CHECK(accepted == 1000);
}
