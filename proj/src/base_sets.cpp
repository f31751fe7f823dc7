#include "apfree/base_sets.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "apfree/progression.hpp"

namespace apfree {

namespace {

// Whether appending `candidate` (larger than every current element) keeps
// the set free. The current set is free by induction, so any progression
// in the grown set is a fresh one and the first hit decides.
bool stays_free(const std::vector<value_t>& current, value_t candidate, int k, int degree_bound) {
    std::vector<value_t> grown(current);
    grown.push_back(candidate);
    IntSet probe = IntSet::from_sorted(std::move(grown));
    return verify_free(probe, k, degree_bound).free;
}

struct BranchAndBound {
    std::int64_t n0;
    int k;
    int degree_bound;
    std::vector<value_t> current;
    std::vector<value_t> best;

    void run() {
        current.reserve(static_cast<std::size_t>(n0));
        descend(1);
    }

    void descend(value_t next) {
        if (next > n0) return;
        // Subtrees that can at most tie are cut: the first set recorded at
        // each size is the lexicographically smallest of that size, since
        // the include branch is explored first in increasing element order.
        if (current.size() + static_cast<std::size_t>(n0 - next + 1) <= best.size()) return;
        if (stays_free(current, next, k, degree_bound)) {
            current.push_back(next);
            if (current.size() > best.size()) best = current;
            descend(next + 1);
            current.pop_back();
        }
        descend(next + 1);
    }
};

}  // namespace

IntSet exact_max_free(std::int64_t n0, int k, int degree_bound, std::int64_t cap) {
    if (n0 < 1) throw std::domain_error("exact_max_free: n0 must be positive");
    if (k < degree_bound + 2) throw std::domain_error("exact_max_free: requires k >= degree_bound + 2");
    if (n0 > cap)
        throw std::domain_error("exact_max_free: n0 " + std::to_string(n0) + " exceeds the exact-search cap " +
                                std::to_string(cap) + "; use greedy_free instead");
    BranchAndBound search{n0, k, degree_bound, {}, {}};
    search.run();
    return IntSet::from_sorted(std::move(search.best));
}

IntSet greedy_free(std::int64_t n0, int k, int degree_bound) {
    if (n0 < 1) throw std::domain_error("greedy_free: n0 must be positive");
    if (k < degree_bound + 2) throw std::domain_error("greedy_free: requires k >= degree_bound + 2");
    std::vector<value_t> out;
    for (value_t v = 1; v <= n0; ++v) {
        if (stays_free(out, v, k, degree_bound)) out.push_back(v);
    }
    return IntSet::from_sorted(std::move(out));
}

IntSet behrend_digits(std::int64_t n) {
    if (n < 1) throw std::domain_error("behrend_digits: n must be positive");
    std::vector<value_t> best;
    for (int m = 2; m <= 16; ++m) {
        const std::int64_t base = 2 * m;
        std::map<std::int64_t, std::vector<value_t>> shells;
        for (value_t v = 1; v <= n; ++v) {
            std::int64_t norm = 0;
            value_t rest = v;
            bool admissible = true;
            while (rest > 0) {
                const std::int64_t digit = rest % base;
                if (digit >= m) {
                    admissible = false;
                    break;
                }
                norm += digit * digit;
                rest /= base;
            }
            if (admissible) shells[norm].push_back(v);
        }
        // Scanning m then norm in increasing order keeps the first maximal
        // shell, so output is deterministic.
        for (const auto& [norm, members] : shells) {
            if (members.size() > best.size()) best = members;
        }
    }
    return IntSet::from_sorted(std::move(best));
}

IntSet build_base_set(const BaseSetRequest& request) {
    switch (request.strategy) {
        case BaseStrategy::exact:
            return exact_max_free(request.n0, request.k, request.degree_bound, request.exact_cap);
        case BaseStrategy::greedy:
            return greedy_free(request.n0, request.k, request.degree_bound);
        case BaseStrategy::behrend:
            return behrend_digits(request.n0);
        case BaseStrategy::auto_select:
            if (request.n0 <= request.exact_cap)
                return exact_max_free(request.n0, request.k, request.degree_bound, request.exact_cap);
            return greedy_free(request.n0, request.k, request.degree_bound);
    }
    throw std::logic_error("build_base_set: unknown strategy");
}

IntSet base_set(std::int64_t n0, int k, int progression_degree, std::int64_t cap) {
    if (progression_degree < 1) throw std::domain_error("base_set: degree must be positive");
    if (k <= 2 * progression_degree) throw std::domain_error("base_set: requires k > 2D");
    if (k <= 4 * progression_degree) return IntSet{1};
    if (n0 < 1) throw std::domain_error("base_set: n0 must be positive");
    const int dg = 2 * progression_degree;
    if (n0 <= cap) return exact_max_free(n0, k, dg, cap);
    return greedy_free(n0, k, dg);
}

}  // namespace apfree
