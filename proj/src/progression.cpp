#include "apfree/progression.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace apfree {

namespace {

bool all_zero(const Seq& s) {
    return std::all_of(s.begin(), s.end(), [](value_t v) { return v == 0; });
}

bool is_constant(const Seq& s) {
    return std::all_of(s.begin(), s.end(), [&](value_t v) { return v == s.front(); });
}

// Coefficients c_0..c_D with a_{v+D+1} = sum_i c_i a_{v+i}, obtained by
// solving the vanishing (D+1)-st difference for its last term:
// c_i = (-1)^{D+i} binom(D+1, i).
std::vector<value_t> recurrence_coefficients(int degree_bound) {
    std::vector<value_t> c(static_cast<std::size_t>(degree_bound) + 1);
    value_t binom = 1;  // binom(D+1, 0)
    for (int i = 0; i <= degree_bound; ++i) {
        value_t sign = ((degree_bound + i) % 2 == 0) ? 1 : -1;
        c[static_cast<std::size_t>(i)] = sign * binom;
        binom = binom * (degree_bound + 1 - i) / (i + 1);
    }
    return c;
}

}  // namespace

Seq forward_difference(const Seq& s) {
    if (s.size() < 2) throw std::domain_error("forward_difference: sequence must have at least 2 entries");
    Seq out(s.size() - 1);
    for (std::size_t v = 0; v + 1 < s.size(); ++v) out[v] = s[v + 1] - s[v];
    return out;
}

Seq repeated_difference(Seq s, int m) {
    if (m < 1) throw std::domain_error("repeated_difference: m must be positive");
    if (static_cast<std::size_t>(m) >= s.size())
        throw std::domain_error("repeated_difference: m must be smaller than the sequence length");
    for (int step = 0; step < m; ++step) {
        for (std::size_t v = 0; v + 1 < s.size(); ++v) s[v] = s[v + 1] - s[v];
        s.pop_back();
    }
    return s;
}

bool is_progression(const Seq& s, int degree_bound) {
    if (degree_bound < 1) throw std::domain_error("is_progression: degree bound must be positive");
    if (s.size() < static_cast<std::size_t>(degree_bound) + 2)
        throw std::domain_error("is_progression: sequence shorter than degree_bound + 2");
    if (is_constant(s)) return false;
    return all_zero(repeated_difference(s, degree_bound + 1));
}

ProgressionType type_of(const Seq& s) {
    if (s.empty() || is_constant(s)) throw std::domain_error("type_of: constant sequence has no type");
    Seq cur = forward_difference(s);  // Delta^1
    for (std::size_t m = 1; m + 1 < s.size(); ++m) {
        Seq next = forward_difference(cur);  // Delta^{m+1}
        if (all_zero(next)) {
            // cur is constant and nonzero at the minimal degree.
            return ProgressionType{static_cast<int>(m), s.front(), cur.front()};
        }
        cur = std::move(next);
    }
    throw std::domain_error("type_of: not a polynomial sequence of admissible degree");
}

Seq extend_progression(const Seq& prefix, int degree_bound, int k) {
    if (degree_bound < 1) throw std::domain_error("extend_progression: degree bound must be positive");
    if (prefix.size() != static_cast<std::size_t>(degree_bound) + 1)
        throw std::domain_error("extend_progression: prefix must have exactly degree_bound + 1 entries");
    if (k < degree_bound + 2) throw std::domain_error("extend_progression: k must be at least degree_bound + 2");

    const auto coeff = recurrence_coefficients(degree_bound);
    Seq s(prefix);
    s.resize(static_cast<std::size_t>(k));
    constexpr auto lo = std::numeric_limits<value_t>::min();
    constexpr auto hi = std::numeric_limits<value_t>::max();
    for (int v = degree_bound + 1; v < k; ++v) {
        __int128 acc = 0;
        for (int i = 0; i <= degree_bound; ++i)
            acc += static_cast<__int128>(coeff[static_cast<std::size_t>(i)]) * s[static_cast<std::size_t>(v - degree_bound - 1 + i)];
        if (acc < lo || acc > hi) throw std::overflow_error("extend_progression: value exceeds 64-bit range");
        s[static_cast<std::size_t>(v)] = static_cast<value_t>(acc);
    }
    return s;
}

void for_each_progression(const IntSet& set, int k, int degree_bound,
                          const std::function<bool(const Seq&)>& visit) {
    if (degree_bound < 1) throw std::domain_error("for_each_progression: degree bound must be positive");
    if (k < degree_bound + 2) throw std::domain_error("for_each_progression: requires k >= degree_bound + 2");
    const auto& elems = set.elements();
    const std::size_t n = elems.size();
    if (n == 0) return;

    const auto coeff = recurrence_coefficients(degree_bound);
    const std::size_t prefix_len = static_cast<std::size_t>(degree_bound) + 1;
    const value_t lo = elems.front(), hi = elems.back();

    std::vector<std::size_t> idx(prefix_len, 0);
    Seq s(static_cast<std::size_t>(k));
    for (;;) {
        bool constant = true;
        for (std::size_t i = 0; i < prefix_len; ++i) {
            s[i] = elems[idx[i]];
            if (s[i] != s[0]) constant = false;
        }
        // A constant prefix only extends to a constant sequence; skip it.
        if (!constant) {
            bool inside = true;
            for (int v = degree_bound + 1; v < k; ++v) {
                __int128 acc = 0;
                for (int i = 0; i <= degree_bound; ++i)
                    acc += static_cast<__int128>(coeff[static_cast<std::size_t>(i)]) *
                           s[static_cast<std::size_t>(v - degree_bound - 1 + i)];
                if (acc < lo || acc > hi) {
                    inside = false;
                    break;
                }
                const value_t next = static_cast<value_t>(acc);
                if (!set.contains(next)) {
                    inside = false;
                    break;
                }
                s[static_cast<std::size_t>(v)] = next;
            }
            if (inside && !visit(s)) return;
        }
        // Odometer step; idx[0] is the most significant digit, so prefixes
        // appear in lexicographic order of their values.
        std::size_t pos = prefix_len;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < n) break;
            idx[pos] = 0;
            if (pos == 0) return;
        }
    }
}

std::vector<Seq> enumerate_progressions(const IntSet& set, int k, int degree_bound) {
    std::vector<Seq> out;
    for_each_progression(set, k, degree_bound, [&](const Seq& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::size_t count_types(const IntSet& set, int k, int degree_bound) {
    std::set<ProgressionType> types;
    for_each_progression(set, k, degree_bound, [&](const Seq& s) {
        types.insert(type_of(s));
        return true;
    });
    return types.size();
}

IntSet find_starters(const IntSet& set, int k, int degree_bound) {
    std::set<value_t> starters;
    for_each_progression(set, k, degree_bound, [&](const Seq& s) {
        starters.insert(s.front());
        return true;
    });
    return IntSet::from_sorted(std::vector<value_t>(starters.begin(), starters.end()));
}

Certificate verify_free(const IntSet& set, int k, int degree_bound) {
    Certificate cert;
    for_each_progression(set, k, degree_bound, [&](const Seq& s) {
        cert.free = false;
        cert.witness = s;
        return false;
    });
    return cert;
}

}  // namespace apfree
