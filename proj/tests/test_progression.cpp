#include <doctest.h>

#include <algorithm>

#include "apfree/progression.hpp"
#include "apfree/rng.hpp"
#include "oracles.hpp"

using namespace apfree;

TEST_CASE("forward_difference basics") {
    CHECK(forward_difference({1, 4, 9, 16, 25}) == Seq{3, 5, 7, 9});
    CHECK(forward_difference({5, 5}) == Seq{0});
    CHECK(forward_difference({1, 5, 11, 19, 29}) == Seq{4, 6, 8, 10});
    CHECK_THROWS_AS(forward_difference({7}), std::domain_error);
}

TEST_CASE("repeated_difference values and binomial formula") {
    CHECK(repeated_difference({1, 4, 9, 16, 25}, 2) == Seq{2, 2, 2});
    CHECK(repeated_difference({27, 4096, 10648, 19683}, 2) == Seq{2483, 2483});
    CHECK(repeated_difference({1, 2, 3, 4, 5}, 2) == Seq{0, 0, 0});
    CHECK_THROWS_AS(repeated_difference({1, 2}, 2), std::domain_error);
    CHECK_THROWS_AS(repeated_difference({1, 2}, 0), std::domain_error);

    // Delta^m(a)_v = sum_i (-1)^{m-i} binom(m,i) a_{v+i}
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const int len = 3 + static_cast<int>(rng.next_u64() % 8);
        const Seq s = oracles::random_sequence(rng, len, -100, 100);
        const int m = 1 + static_cast<int>(rng.next_u64() % (len - 1));
        const Seq got = repeated_difference(s, m);
        for (std::size_t v = 0; v < got.size(); ++v) {
            value_t acc = 0;
            value_t binom = 1;
            for (int i = 0; i <= m; ++i) {
                const value_t sign = ((m - i) % 2 == 0) ? 1 : -1;
                acc += sign * binom * s[v + static_cast<std::size_t>(i)];
                binom = binom * (m - i) / (i + 1);
            }
            CHECK(got[v] == acc);
        }
    }
}

TEST_CASE("repeated_difference is linear") {
    Rng rng(12);
    for (int rep = 0; rep < 200; ++rep) {
        const int len = 3 + static_cast<int>(rng.next_u64() % 7);
        const Seq s = oracles::random_sequence(rng, len, -50, 50);
        const Seq t = oracles::random_sequence(rng, len, -50, 50);
        const value_t x = static_cast<value_t>(rng.next_u64() % 7) - 3;
        const value_t y = static_cast<value_t>(rng.next_u64() % 7) - 3;
        Seq mix(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) mix[i] = x * s[i] + y * t[i];
        const int m = 1 + static_cast<int>(rng.next_u64() % (len - 1));
        const Seq dm = repeated_difference(mix, m);
        const Seq ds = repeated_difference(s, m);
        const Seq dt = repeated_difference(t, m);
        for (std::size_t i = 0; i < dm.size(); ++i) CHECK(dm[i] == x * ds[i] + y * dt[i]);
    }
}

TEST_CASE("difference growth bound") {
    Rng rng(13);
    for (int rep = 0; rep < 1000; ++rep) {
        const int len = 2 + static_cast<int>(rng.next_u64() % 10);
        const Seq s = oracles::random_sequence(rng, len, -1000000, 1000000);
        const value_t spread = *std::max_element(s.begin(), s.end()) - *std::min_element(s.begin(), s.end());
        for (int m = 1; m < len; ++m) {
            const Seq d = repeated_difference(s, m);
            for (value_t v : d) CHECK(std::abs(v) <= (value_t{1} << (m - 1)) * spread);
        }
    }
}

TEST_CASE("is_progression") {
    CHECK(is_progression({1, 2, 3, 4, 5}, 2));
    CHECK(is_progression({4, 1, 0, 1, 4}, 2));
    CHECK_FALSE(is_progression({4, 1, 0, 1, 4}, 1));
    CHECK_FALSE(is_progression({7, 7, 7, 7}, 1));
    CHECK_FALSE(is_progression({1, 2, 4}, 1));
    CHECK(is_progression({27, 4096, 10648, 19683}, 2));
    CHECK_THROWS_AS(is_progression({1, 2}, 1), std::domain_error);
}

TEST_CASE("type_of on the worked examples") {
    CHECK(type_of({1, 4, 9, 16, 25}) == ProgressionType{2, 1, 2});
    CHECK(type_of({1, 5, 11, 19, 29}) == ProgressionType{2, 1, 2});
    CHECK(type_of({1, 3, 6, 10, 15}) == ProgressionType{2, 1, 1});
    CHECK(type_of({27, 4096, 10648, 19683}) == ProgressionType{2, 27, 2483});
    CHECK(type_of({1, 2, 3, 4, 5}) == ProgressionType{1, 1, 1});
    CHECK_THROWS_AS(type_of({3, 3, 3}), std::domain_error);
    CHECK_THROWS_AS(type_of({1, 2, 4}), std::domain_error);  // no admissible degree from 3 points
}

TEST_CASE("type_of detects random polynomial degrees") {
    Rng rng(14);
    for (int rep = 0; rep < 500; ++rep) {
        const int degree = 1 + static_cast<int>(rng.next_u64() % 5);
        std::vector<value_t> coeff(static_cast<std::size_t>(degree) + 1);
        for (auto& c : coeff) c = static_cast<value_t>(rng.next_u64() % 19) - 9;
        if (coeff.back() == 0) coeff.back() = 3;
        const int k = degree + 2 + static_cast<int>(rng.next_u64() % 3);
        Seq s;
        for (int j = 1; j <= k; ++j) {
            value_t acc = 0;
            for (int i = degree; i >= 0; --i) acc = acc * j + coeff[static_cast<std::size_t>(i)];
            s.push_back(acc);
        }
        value_t fact = 1;
        for (int i = 2; i <= degree; ++i) fact *= i;
        const ProgressionType t = type_of(s);
        CHECK(t.degree == degree);
        CHECK(t.first == s.front());
        CHECK(t.difference == fact * coeff.back());
    }
}

TEST_CASE("progressions are closed under reversal") {
    Rng rng(15);
    int seen = 0;
    for (int rep = 0; rep < 4000; ++rep) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 2);
        const int k = d + 2 + static_cast<int>(rng.next_u64() % 3);
        const Seq s = oracles::random_sequence(rng, k, -6, 6);
        Seq r(s.rbegin(), s.rend());
        const bool forward = is_progression(s, d);
        CHECK(forward == is_progression(r, d));
        if (forward) {
            ++seen;
            CHECK(type_of(s).degree == type_of(r).degree);
        }
    }
    CHECK(seen > 10);  // the sample space is small enough to hit progressions
}

TEST_CASE("extend_progression") {
    CHECK(extend_progression({4, 1}, 1, 3) == Seq{4, 1, -2});
    CHECK(extend_progression({4, 1, 0}, 2, 5) == Seq{4, 1, 0, 1, 4});
    CHECK(extend_progression({1, 4, 9}, 2, 5) == Seq{1, 4, 9, 16, 25});
    CHECK_THROWS_AS(extend_progression({1, 2, 3}, 1, 5), std::domain_error);

    // Extensions of integer prefixes always satisfy the recurrence and are
    // recovered by the difference test.
    Rng rng(16);
    for (int rep = 0; rep < 300; ++rep) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 3);
        const Seq prefix = oracles::random_sequence(rng, d + 1, -30, 30);
        const int k = d + 2 + static_cast<int>(rng.next_u64() % 4);
        const Seq full = extend_progression(prefix, d, k);
        bool constant = std::all_of(full.begin(), full.end(), [&](value_t v) { return v == full[0]; });
        if (!constant) CHECK(is_progression(full, d));
    }
}

TEST_CASE("enumerate_progressions matches the worked examples") {
    auto got = enumerate_progressions(IntSet{1, 2, 3}, 3, 1);
    CHECK(got == std::vector<Seq>{{1, 2, 3}, {3, 2, 1}});
    CHECK(enumerate_progressions(IntSet{1, 2, 4}, 3, 1).empty());

    auto with_zero = enumerate_progressions(IntSet{0, 1, 4}, 5, 2);
    CHECK(std::find(with_zero.begin(), with_zero.end(), Seq{4, 1, 0, 1, 4}) != with_zero.end());
}

TEST_CASE("value-repeating progressions are found") {
    // {1,2,5} carries the 5-term degree-2 progression 5,2,1,2,5.
    const Certificate cert = verify_free(IntSet{1, 2, 5}, 5, 2);
    REQUIRE_FALSE(cert.free);
    CHECK(is_progression(*cert.witness, 2));
    for (value_t v : *cert.witness) CHECK(IntSet{1, 2, 5}.contains(v));
}

TEST_CASE("enumerate_progressions agrees with the exhaustive oracle") {
    Rng rng(17);
    const std::pair<int, int> shapes[] = {{3, 1}, {4, 1}, {5, 1}, {4, 2}, {5, 2}};
    for (int rep = 0; rep < 60; ++rep) {
        const auto [k, d] = shapes[rng.next_u64() % 5];
        const int size = 1 + static_cast<int>(rng.next_u64() % 10);
        const IntSet set = oracles::random_set(rng, size, -15, 15);
        auto got = enumerate_progressions(set, k, d);
        auto want = oracles::progressions(set, k, d);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("count_types") {
    CHECK(count_types(IntSet{1, 2, 3}, 3, 1) == 2);
    CHECK(count_types(IntSet{1, 2, 4}, 3, 1) == 0);
    IntSet squares7{1, 4, 9, 16, 25, 36, 49};
    CHECK(count_types(squares7, 3, 1) == 2);

    // N^{D+1} is an unconditional bound.
    Rng rng(18);
    for (int rep = 0; rep < 40; ++rep) {
        const int size = 1 + static_cast<int>(rng.next_u64() % 12);
        const IntSet set = oracles::random_set(rng, size, -40, 40);
        const int d = 1 + static_cast<int>(rng.next_u64() % 2);
        const double n = static_cast<double>(set.size());
        CHECK(static_cast<double>(count_types(set, d + 3, d)) <= std::pow(n, d + 1));
    }
}

TEST_CASE("interval type counts respect the 2^{D+1} N^2 bound") {
    for (int n : {5, 12, 25, 40}) {
        std::vector<value_t> vals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = i + 1;
        const IntSet interval = IntSet::from_sorted(std::move(vals));
        for (int d = 1; d <= 2; ++d) {
            const double bound = std::ldexp(static_cast<double>(n) * n, d + 1);
            CHECK(static_cast<double>(count_types(interval, d + 2, d)) <= bound);
        }
    }
}

TEST_CASE("find_starters") {
    CHECK(find_starters(IntSet{1, 2, 3, 5}, 3, 1) == IntSet{1, 3, 5});
    CHECK(find_starters(IntSet{1, 2, 4}, 3, 1) == IntSet{});
    CHECK(find_starters(IntSet{1, 2, 3}, 3, 1) == IntSet{1, 3});
}

TEST_CASE("removing starters leaves a free set") {
    Rng rng(19);
    const std::pair<int, int> shapes[] = {{3, 1}, {4, 1}, {5, 1}, {4, 2}, {5, 2}};
    for (int rep = 0; rep < 500; ++rep) {
        const auto [k, d] = shapes[rng.next_u64() % 5];
        const int size = 1 + static_cast<int>(rng.next_u64() % 40);
        const IntSet set = oracles::random_set(rng, size, 1, 120);
        const IntSet rest = set.set_minus(find_starters(set, k, d));
        CHECK(verify_free(rest, k, d).free);
    }
}

TEST_CASE("verify_free") {
    CHECK(verify_free(IntSet{1, 2, 4, 5}, 3, 1).free);

    const Certificate bad = verify_free(IntSet{1, 2, 3}, 3, 1);
    REQUIRE_FALSE(bad.free);
    CHECK(*bad.witness == Seq{1, 2, 3});

    IntSet squares7{1, 4, 9, 16, 25, 36, 49};
    const Certificate sq = verify_free(squares7, 3, 1);
    REQUIRE_FALSE(sq.free);
    CHECK(*sq.witness == Seq{1, 25, 49});  // lexicographically first prefix

    CHECK_THROWS_AS(verify_free(IntSet{1, 2, 3}, 2, 1), std::domain_error);
}
